#include "rfl/depth.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rfl/error.hpp"

namespace rfl::depth {

namespace {

using Mask = std::uint64_t;
using IndexSet = std::vector<std::uint32_t>;

constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(out, base, &out)) return std::numeric_limits<std::uint64_t>::max();
    return out;
}

// Words of one length packed into 64-bit codes, `bits` per position with
// position 0 in the lowest lane.
class Packing {
public:
    Packing(std::size_t n, std::size_t k) : n_(n), k_(k) {
        bits_ = k <= 2 ? 1 : static_cast<std::size_t>(std::bit_width(k - 1));
        if (n * bits_ > 64) throw CapExceeded("word length too large for packed certificate search");
        lane_ = (Mask{1} << bits_) - 1;
    }

    std::size_t length() const noexcept { return n_; }
    std::size_t alphabet_size() const noexcept { return k_; }

    Mask pack(const Word& w) const {
        Mask code = 0;
        for (std::size_t i = 0; i < n_; ++i) code |= Mask{w[i]} << (i * bits_);
        return code;
    }

    Letter letter(Mask code, std::size_t i) const noexcept {
        return static_cast<Letter>((code >> (i * bits_)) & lane_);
    }

    // Positions where two packed words differ.
    Mask diff(Mask x, Mask y) const noexcept {
        Mask z = x ^ y;
        if (bits_ == 1) return z;
        Mask m = 0;
        for (std::size_t i = 0; i < n_; ++i)
            if ((z >> (i * bits_)) & lane_) m |= Mask{1} << i;
        return m;
    }

    // Every word of length n, in increasing index order.
    std::vector<Mask> all_codes() const {
        const std::uint64_t total = saturating_pow(k_, n_);
        std::vector<Mask> out;
        out.reserve(total);
        if (bits_ == 1) {
            for (Mask c = 0; c < total; ++c) out.push_back(c);
            return out;
        }
        Word w(n_, 0);
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            out.push_back(pack(w));
            for (std::size_t i = 0; i < n_; ++i) {
                if (++w[i] < k_) break;
                w[i] = 0;
            }
        }
        return out;
    }

private:
    std::size_t n_, k_, bits_;
    Mask lane_;
};

std::vector<Mask> pack_all(const Packing& p, const Slice& lang) {
    std::vector<Mask> codes;
    codes.reserve(lang.words.size());
    for (const Word& w : lang.words) {
        if (w.size() != lang.length) throw Error("slice contains a word of the wrong length");
        codes.push_back(p.pack(w));
    }
    return codes;
}

// Drop every set that contains another set of the family: a certificate that
// hits the minimal sets hits them all.
std::vector<Mask> minimal_family(std::vector<Mask> sets) {
    std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<Mask> kept;
    for (Mask s : sets) {
        bool dominated = std::any_of(kept.begin(), kept.end(), [s](Mask k) { return (k & ~s) == 0; });
        if (!dominated) kept.push_back(s);
    }
    return kept;
}

// Minimum hitting set over at most 64 positions by iterative deepening.
// Branches on the unhit set with the fewest admissible positions; once a
// position has been tried it is excluded from the sibling branches.
class HittingSet {
public:
    explicit HittingSet(const std::vector<Mask>& sets) : sets_(sets) {}

    Mask solve(std::size_t max_size) {
        for (std::size_t budget = 0; budget <= max_size; ++budget)
            if (search(0, 0, budget)) return found_;
        throw Error("internal: hitting set larger than the word length");
    }

private:
    bool search(Mask chosen, Mask excluded, std::size_t budget) {
        std::size_t pick = kUnbounded;
        int pick_count = 65;
        Mask packed = 0;
        std::size_t disjoint = 0;
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            Mask s = sets_[i];
            if (s & chosen) continue;
            Mask eff = s & ~excluded;
            int c = std::popcount(eff);
            if (c == 0) return false;
            if (c < pick_count) {
                pick_count = c;
                pick = i;
            }
            // Pairwise disjoint unhit sets each need their own position.
            if ((eff & packed) == 0) {
                packed |= eff;
                if (++disjoint > budget) return false;
            }
        }
        if (pick == kUnbounded) {
            found_ = chosen;
            return true;
        }
        if (budget == 0) return false;
        Mask eff = sets_[pick] & ~excluded;
        while (eff) {
            Mask bit = eff & (~eff + 1);
            eff ^= bit;
            if (search(chosen | bit, excluded, budget - 1)) return true;
            excluded |= bit;
        }
        return false;
    }

    const std::vector<Mask>& sets_;
    Mask found_ = 0;
};

Mask certificate_mask(const std::vector<Mask>& sets, std::size_t n) {
    auto family = minimal_family(sets);
    return HittingSet(family).solve(n);
}

Certificate to_certificate(Mask m, const Word& w) {
    Certificate c;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (m >> i & 1) {
            c.positions.push_back(i + 1);
            c.letters.push_back(w[i]);
        }
    return c;
}

// Size of the smallest certificate separating `w` from every word in `others`.
std::size_t separation_size(const Packing& p, Mask w, const std::vector<Mask>& others) {
    std::vector<Mask> sets;
    sets.reserve(others.size());
    for (Mask u : others)
        if (u != w) sets.push_back(p.diff(w, u));
    if (sets.empty()) return 0;
    return static_cast<std::size_t>(std::popcount(certificate_mask(sets, p.length())));
}

// Membership side of the nondeterministic membership problem.
struct MembershipUniverse {
    std::vector<Mask> all;
    std::vector<bool> is_member;
    std::vector<Mask> members;
    std::vector<Mask> nonmembers;
};

MembershipUniverse membership_universe(const Packing& p, const std::vector<Mask>& member_codes) {
    MembershipUniverse u;
    u.all = p.all_codes();
    auto sorted = member_codes;
    std::sort(sorted.begin(), sorted.end());
    u.is_member.resize(u.all.size());
    for (std::size_t i = 0; i < u.all.size(); ++i) {
        bool in = std::binary_search(sorted.begin(), sorted.end(), u.all[i]);
        u.is_member[i] = in;
        (in ? u.members : u.nonmembers).push_back(u.all[i]);
    }
    return u;
}

bool trivially_uniform(const Slice& lang) {
    return lang.words.empty() ||
           lang.words.size() == saturating_pow(lang.alphabet_size, lang.length);
}

}  // namespace

// ---- slices and certificates ----------------------------------------------

Slice slice(const Source& src, std::size_t n, const EnumerationLimits& limits) {
    return Slice{src.alphabet().size(), n, enumerate(src, n, limits)};
}

Certificate min_certificate(const Slice& lang, const Word& w) {
    if (!std::binary_search(lang.words.begin(), lang.words.end(), w))
        throw PreconditionError("word is not in the language slice");
    Packing p(lang.length, lang.alphabet_size);
    const auto codes = pack_all(p, lang);
    const Mask wc = p.pack(w);
    std::vector<Mask> sets;
    for (Mask u : codes)
        if (u != wc) sets.push_back(p.diff(wc, u));
    if (sets.empty()) return {};
    return to_certificate(certificate_mask(sets, p.length()), w);
}

Certificate min_membership_certificate(const Slice& lang, const Word& w) {
    if (w.size() != lang.length) throw PreconditionError("word length differs from the slice length");
    for (Letter a : w)
        if (a >= lang.alphabet_size) throw Error("letter index outside the alphabet");
    Packing p(lang.length, lang.alphabet_size);
    const auto universe = membership_universe(p, pack_all(p, lang));
    const Mask wc = p.pack(w);
    const bool member = std::binary_search(lang.words.begin(), lang.words.end(), w);
    const auto& others = member ? universe.nonmembers : universe.members;
    std::vector<Mask> sets;
    for (Mask u : others) sets.push_back(p.diff(wc, u));
    if (sets.empty()) return {};
    return to_certificate(certificate_mask(sets, p.length()), w);
}

// ---- nondeterministic kernels ---------------------------------------------

namespace serial {

std::size_t h_ra(const Slice& lang) {
    if (lang.words.size() <= 1) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto codes = pack_all(p, lang);
    std::size_t best = 0;
    for (Mask w : codes) best = std::max(best, separation_size(p, w, codes));
    return best;
}

std::size_t h_ma(const Slice& lang) {
    if (trivially_uniform(lang)) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto u = membership_universe(p, pack_all(p, lang));
    std::size_t best = 0;
    for (std::size_t i = 0; i < u.all.size(); ++i)
        best = std::max(best, separation_size(p, u.all[i], u.is_member[i] ? u.nonmembers : u.members));
    return best;
}

}  // namespace serial

namespace parallel {

std::size_t h_ra(const Slice& lang) {
    if (lang.words.size() <= 1) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto codes = pack_all(p, lang);
    const auto count = static_cast<std::int64_t>(codes.size());
    std::size_t best = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
    for (std::int64_t i = 0; i < count; ++i)
        best = std::max(best, separation_size(p, codes[static_cast<std::size_t>(i)], codes));
    return best;
}

std::size_t h_ma(const Slice& lang) {
    if (trivially_uniform(lang)) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto u = membership_universe(p, pack_all(p, lang));
    const auto count = static_cast<std::int64_t>(u.all.size());
    std::size_t best = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
    for (std::int64_t i = 0; i < count; ++i) {
        auto idx = static_cast<std::size_t>(i);
        best = std::max(best, separation_size(p, u.all[idx], u.is_member[idx] ? u.nonmembers : u.members));
    }
    return best;
}

}  // namespace parallel

// ---- deterministic kernels -------------------------------------------------

namespace {

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : s) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Fewest queries that can split `size` candidates into singletons.
std::size_t split_lower_bound(std::size_t size, std::size_t k) {
    std::size_t d = 0;
    for (std::uint64_t reach = 1; reach < size; reach *= k) ++d;
    return d;
}

std::vector<IndexSet> partition(const Packing& p, const std::vector<Mask>& codes, const IndexSet& s,
                                std::size_t pos) {
    std::vector<IndexSet> parts(p.alphabet_size());
    for (auto idx : s) parts[p.letter(codes[idx], pos)].push_back(idx);
    return parts;
}

// Order children largest first so the running maximum hits the cutoff early.
std::vector<std::size_t> by_size_desc(const std::vector<IndexSet>& parts) {
    std::vector<std::size_t> order(parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return parts[a].size() > parts[b].size(); });
    return order;
}

// D(S) = 0 for |S| <= 1, else min over positions of max over letters with a
// nonempty restriction of 1 + D(S restricted).
class RecognitionSolver {
public:
    RecognitionSolver(const Packing& p, const std::vector<Mask>& codes) : p_(p), codes_(codes) {}

    std::size_t solve(const IndexSet& s) {
        if (s.size() <= 1) return 0;
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
        const std::size_t lb = std::max<std::size_t>(1, split_lower_bound(s.size(), p_.alphabet_size()));
        std::size_t best = kUnbounded;
        for (std::size_t pos = 0; pos < p_.length() && best > lb; ++pos) {
            auto parts = partition(p_, codes_, s, pos);
            if (std::count_if(parts.begin(), parts.end(), [](const IndexSet& x) { return !x.empty(); }) < 2)
                continue;
            std::size_t worst = 0;
            for (std::size_t a : by_size_desc(parts)) {
                if (parts[a].empty()) break;
                worst = std::max(worst, 1 + solve(parts[a]));
                if (worst >= best) break;
            }
            best = std::min(best, worst);
        }
        memo_.emplace(s, best);
        return best;
    }

private:
    const Packing& p_;
    const std::vector<Mask>& codes_;
    std::unordered_map<IndexSet, std::size_t, IndexSetHash> memo_;
};

// depth(free, M) = 0 when the cube over the free positions is entirely inside
// or outside the language, else min over free positions of max over every
// letter of 1 + depth(free - i, M restricted). Keyed on (free set, M).
class MembershipSolver {
public:
    MembershipSolver(const Packing& p, const std::vector<Mask>& codes) : p_(p), codes_(codes) {}

    std::size_t solve(Mask free, const IndexSet& m) {
        const std::uint64_t cube = saturating_pow(p_.alphabet_size(), static_cast<std::size_t>(std::popcount(free)));
        if (m.empty() || m.size() == cube) return 0;
        IndexSet key;
        key.reserve(m.size() + 2);
        key.push_back(static_cast<std::uint32_t>(free));
        key.push_back(static_cast<std::uint32_t>(free >> 32));
        key.insert(key.end(), m.begin(), m.end());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t best = kUnbounded;
        for (std::size_t pos = 0; pos < p_.length() && best > 1; ++pos) {
            if (!(free >> pos & 1)) continue;
            auto parts = partition(p_, codes_, m, pos);
            const Mask rest = free & ~(Mask{1} << pos);
            std::size_t worst = 0;
            for (std::size_t a : by_size_desc(parts)) {
                worst = std::max(worst, 1 + solve(rest, parts[a]));
                if (worst >= best) break;
            }
            best = std::min(best, worst);
        }
        memo_.emplace(std::move(key), best);
        return best;
    }

private:
    const Packing& p_;
    const std::vector<Mask>& codes_;
    std::unordered_map<IndexSet, std::size_t, IndexSetHash> memo_;
};

IndexSet full_index_set(std::size_t n) {
    IndexSet s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::uint32_t>(i);
    return s;
}

}  // namespace

std::size_t h_rd(const Slice& lang) {
    if (lang.words.size() <= 1) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto codes = pack_all(p, lang);
    return RecognitionSolver(p, codes).solve(full_index_set(codes.size()));
}

std::size_t h_md(const Slice& lang) {
    if (trivially_uniform(lang)) return 0;
    Packing p(lang.length, lang.alphabet_size);
    const auto codes = pack_all(p, lang);
    const Mask all = lang.length == 64 ? ~Mask{0} : (Mask{1} << lang.length) - 1;
    return MembershipSolver(p, codes).solve(all, full_index_set(codes.size()));
}

// ---- source-level oracles --------------------------------------------------

namespace {

void require_positive_length(std::size_t n) {
    if (n == 0) throw PreconditionError("depth functions are defined for n >= 1");
}

Slice recognition_slice(const Source& src, std::size_t n, const OracleLimits& limits) {
    require_positive_length(n);
    EnumerationLimits el{limits.max_length};
    const auto size = count_words(src, n, el);
    if (size > limits.cap_members)
        throw CapExceeded("|L(" + std::to_string(n) + ")| = " + std::to_string(size) +
                          " exceeds the member cap of " + std::to_string(limits.cap_members));
    return slice(src, n, el);
}

Slice membership_slice(const Source& src, std::size_t n, const OracleLimits& limits) {
    require_positive_length(n);
    const auto total = saturating_pow(src.alphabet().size(), n);
    if (total > limits.cap_total)
        throw CapExceeded("|Sigma|^" + std::to_string(n) + " exceeds the total cap of " +
                          std::to_string(limits.cap_total));
    return slice(src, n, EnumerationLimits{limits.max_length});
}

}  // namespace

std::size_t h_ra(const Source& src, std::size_t n, const OracleLimits& limits, Execution exec) {
    auto s = recognition_slice(src, n, limits);
    return exec == Execution::Serial ? serial::h_ra(s) : parallel::h_ra(s);
}

std::size_t h_rd(const Source& src, std::size_t n, const OracleLimits& limits) {
    return h_rd(recognition_slice(src, n, limits));
}

std::size_t h_ma(const Source& src, std::size_t n, const OracleLimits& limits, Execution exec) {
    auto s = membership_slice(src, n, limits);
    return exec == Execution::Serial ? serial::h_ma(s) : parallel::h_ma(s);
}

std::size_t h_md(const Source& src, std::size_t n, const OracleLimits& limits) {
    return h_md(membership_slice(src, n, limits));
}

std::size_t depth(DepthKind kind, const Source& src, std::size_t n, const OracleLimits& limits, Execution exec) {
    switch (kind) {
        case DepthKind::rd: return h_rd(src, n, limits);
        case DepthKind::ra: return h_ra(src, n, limits, exec);
        case DepthKind::md: return h_md(src, n, limits);
        case DepthKind::ma: return h_ma(src, n, limits, exec);
    }
    throw Error("unknown depth kind");
}

// ---- tables ----------------------------------------------------------------

std::vector<std::size_t> smoothed(std::span<const std::size_t> h) {
    std::vector<std::size_t> out(h.begin(), h.end());
    for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::max(out[i], out[i - 1]);
    return out;
}

bool DepthTable::complete() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const DepthRow& r) {
        return std::all_of(r.h.begin(), r.h.end(), [](const auto& v) { return v.has_value(); });
    });
}

DepthTable depth_report(const Source& src, std::size_t n_max, const OracleLimits& limits, Execution exec) {
    if (n_max > limits.max_length)
        throw CapExceeded("n_max " + std::to_string(n_max) + " exceeds the length limit of " +
                          std::to_string(limits.max_length));
    DepthTable table;
    table.rows.resize(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        table.rows[n - 1].n = n;
        table.rows[n - 1].lang_size = count_words(src, n, EnumerationLimits{limits.max_length});
    }

    auto cell = [&](DepthKind kind, std::size_t n, Execution e) -> std::optional<std::size_t> {
        try {
            return depth(kind, src, n, limits, e);
        } catch (const CapExceeded&) {
            return std::nullopt;
        }
    };

    if (exec == Execution::Serial) {
        for (auto& row : table.rows)
            for (DepthKind kind : kDepthKinds)
                row.h[static_cast<std::size_t>(kind)] = cell(kind, row.n, Execution::Serial);
    } else {
        // Deterministic cells are independent memoized searches: one task each.
        const auto tasks = static_cast<std::int64_t>(2 * n_max);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t t = 0; t < tasks; ++t) {
            auto& row = table.rows[static_cast<std::size_t>(t / 2)];
            DepthKind kind = (t % 2 == 0) ? DepthKind::rd : DepthKind::md;
            row.h[static_cast<std::size_t>(kind)] = cell(kind, row.n, Execution::Serial);
        }
        // Certificate kernels parallelize over words internally.
        for (auto& row : table.rows)
            for (DepthKind kind : {DepthKind::ra, DepthKind::ma})
                row.h[static_cast<std::size_t>(kind)] = cell(kind, row.n, Execution::Parallel);
    }

    for (std::size_t c = 0; c < 4; ++c) {
        std::optional<std::size_t> running = 0;
        for (auto& row : table.rows) {
            if (running && row.h[c])
                running = std::max(*running, *row.h[c]);
            else
                running.reset();
            row.H[c] = running;
        }
    }
    return table;
}

std::vector<std::string> check_invariants(const DepthTable& table) {
    std::vector<std::string> bad;
    auto at = [](const DepthRow& r, DepthKind k) { return r.h[static_cast<std::size_t>(k)]; };
    std::array<std::optional<std::size_t>, 4> prev_H{};
    for (const auto& row : table.rows) {
        const std::string where = "n=" + std::to_string(row.n) + ": ";
        for (std::size_t c = 0; c < 4; ++c) {
            const char* name = to_string(kDepthKinds[c]).data();
            if (row.h[c] && *row.h[c] > row.n) bad.push_back(where + "h_" + name + " exceeds n");
            if (row.h[c] && row.lang_size == 0 && *row.h[c] != 0)
                bad.push_back(where + "h_" + name + " nonzero on an empty slice");
            if (row.H[c] && row.h[c] && *row.H[c] < *row.h[c]) bad.push_back(where + "H_" + name + " below h");
            if (row.H[c] && prev_H[c] && *row.H[c] < *prev_H[c]) bad.push_back(where + "H_" + name + " decreases");
            if (row.H[c] && prev_H[c] && row.h[c] && *row.H[c] != std::max(*prev_H[c], *row.h[c]))
                bad.push_back(where + "H_" + name + " is not the running maximum");
            prev_H[c] = row.H[c];
        }
        auto rd = at(row, DepthKind::rd), ra = at(row, DepthKind::ra);
        auto md = at(row, DepthKind::md), ma = at(row, DepthKind::ma);
        if (rd && ra && *ra > *rd) bad.push_back(where + "h_ra exceeds h_rd");
        if (md && ma && *ma > *md) bad.push_back(where + "h_ma exceeds h_md");
    }
    if (!table.rows.empty()) {
        const auto& first = table.rows.front();
        for (std::size_t c = 0; c < 4; ++c)
            if (first.H[c] != first.h[c]) bad.push_back("n=1: H differs from h");
    }
    return bad;
}

std::string to_tsv(const DepthTable& table) {
    std::ostringstream out;
    out << "n\t|L(n)|\th_rd\tH_rd\th_ra\tH_ra\th_md\tH_md\th_ma\tH_ma\n";
    auto cell = [&](const std::optional<std::size_t>& v) {
        out << '\t';
        if (v)
            out << *v;
        else
            out << '-';
    };
    for (const auto& row : table.rows) {
        out << row.n << '\t' << row.lang_size;
        for (DepthKind k : kDepthKinds) {
            cell(row.h[static_cast<std::size_t>(k)]);
            cell(row.H[static_cast<std::size_t>(k)]);
        }
        out << '\n';
    }
    return out.str();
}

void set_thread_count(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

}  // namespace rfl::depth
