#pragma once

// Fixtures and brute-force oracles shared by the test binaries. Everything
// here is deliberately naive and independent of the library algorithms it
// is used to check.

#include <algorithm>
#include <string>
#include <vector>

#include "rfl/source.hpp"

namespace rfl::testing {

inline std::string fixture_path(const std::string& name) { return std::string(RFL_FIXTURE_DIR) + "/" + name; }

inline Source fixture(const std::string& name) { return load_source(fixture_path(name + ".src")); }

/// The eleven reference fixtures.
inline const std::vector<std::string>& reference_fixtures() {
    static const std::vector<std::string> names{"i0", "i1", "i2", "i3", "i4", "i5",
                                                "alpha_0", "alpha_01", "alpha_00", "alpha_010", "alpha_011"};
    return names;
}

/// Every word of length n over k letters, lexicographic.
inline std::vector<Word> all_words(std::size_t n, std::size_t k) {
    std::vector<Word> out;
    Word w(n, 0);
    for (;;) {
        out.push_back(w);
        std::size_t i = n;
        for (;;) {
            if (i == 0) return out;
            --i;
            if (++w[i] < k) break;
            w[i] = 0;
        }
    }
}

/// Every binary word with 1 <= length <= max_len, shortest first.
inline std::vector<Word> binary_words_up_to(std::size_t max_len) {
    std::vector<Word> out;
    for (std::size_t len = 1; len <= max_len; ++len)
        for (auto& w : all_words(len, 2)) out.push_back(w);
    return out;
}

inline bool has_factor(const Word& w, const Word& f) {
    return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

/// L(n) by filtering all of Sigma^n through `contains`.
inline std::vector<Word> brute_slice(const Source& src, std::size_t n) {
    std::vector<Word> out;
    for (auto& w : all_words(n, src.alphabet().size()))
        if (contains(src, w)) out.push_back(w);
    return out;
}

/// Words of length n avoiding `alpha` as a factor.
inline std::vector<Word> brute_avoiding(const Word& alpha, std::size_t n) {
    std::vector<Word> out;
    for (auto& w : all_words(n, 2))
        if (!has_factor(w, alpha)) out.push_back(w);
    return out;
}

/// All elementary cycles as node sequences (rotated to start at the smallest
/// node), by backtracking from each start node over larger nodes only.
inline std::vector<std::vector<NodeId>> brute_elementary_cycles(const Source& src) {
    std::vector<std::vector<NodeId>> out;
    const auto n = static_cast<NodeId>(src.node_count());
    for (NodeId s = 0; s < n; ++s) {
        std::vector<NodeId> path{s};
        std::vector<bool> on(static_cast<std::size_t>(n), false);
        on[static_cast<std::size_t>(s)] = true;
        auto dfs = [&](auto&& self, NodeId v) -> void {
            for (std::size_t a = 0; a < src.alphabet().size(); ++a) {
                NodeId t = src.next(v, static_cast<Letter>(a));
                if (t == kNoNode) continue;
                if (t == s) {
                    out.push_back(path);
                    continue;
                }
                if (t < s || on[static_cast<std::size_t>(t)]) continue;
                on[static_cast<std::size_t>(t)] = true;
                path.push_back(t);
                self(self, t);
                path.pop_back();
                on[static_cast<std::size_t>(t)] = false;
            }
        };
        dfs(dfs, s);
    }
    return out;
}

/// Minimum |J| isolating w within lang, by trying every J in increasing size.
inline std::size_t brute_certificate(const std::vector<Word>& lang, const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t size = 0; size <= n; ++size) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
            std::size_t agree = 0;
            for (const Word& u : lang) {
                bool same = true;
                for (std::size_t i = 0; i < n && same; ++i)
                    if (mask >> i & 1) same = u[i] == w[i];
                agree += same ? 1 : 0;
            }
            if (agree == 1) return size;
        }
    }
    return n;
}

}  // namespace rfl::testing
