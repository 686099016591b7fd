#pragma once

// Exact desk-scale values of the four minimum decision-tree depths for the
// length-n slice L(n) of a language:
//
//   rd  recognition, deterministic      ra  recognition, nondeterministic
//   md  membership,  deterministic      ma  membership,  nondeterministic
//
// Nondeterministic depths are computed as the largest minimum certificate
// over the words that must be answered; deterministic depths by memoized
// minimax over candidate sets. The certificate kernels come in a serial
// reference form and an OpenMP form that must agree bit for bit.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfl/classification.hpp"
#include "rfl/source.hpp"

namespace rfl::depth {

/// The words of one length, sorted lexicographically.
struct Slice {
    std::size_t alphabet_size = 2;
    std::size_t length = 0;
    std::vector<Word> words;
};

Slice slice(const Source& src, std::size_t n, const EnumerationLimits& limits = {});

/// A set J of 1-based positions together with the letters of the reference
/// word at those positions.
struct Certificate {
    std::vector<std::size_t> positions;
    Word letters;
    std::size_t size() const noexcept { return positions.size(); }
};

/// Smallest J such that `w` is the only word of `lang` agreeing with it on J.
/// Throws PreconditionError when `w` is not in `lang`.
Certificate min_certificate(const Slice& lang, const Word& w);

/// Smallest J such that every word of length n agreeing with `w` on J has the
/// same membership in `lang` as `w` does. `w` may be any word of length n.
Certificate min_membership_certificate(const Slice& lang, const Word& w);

enum class Execution { Serial, Parallel };

namespace serial {
std::size_t h_ra(const Slice& lang);
std::size_t h_ma(const Slice& lang);
}  // namespace serial

namespace parallel {
std::size_t h_ra(const Slice& lang);
std::size_t h_ma(const Slice& lang);
}  // namespace parallel

std::size_t h_rd(const Slice& lang);
std::size_t h_md(const Slice& lang);

struct OracleLimits {
    std::size_t cap_members = 4096;  // |L(n)| bound for rd / ra
    std::size_t cap_total = 65536;   // |Sigma|^n bound for md / ma
    std::size_t max_length = 20;
};

/// Source-level oracles. n >= 1; throw CapExceeded beyond the limits.
std::size_t h_ra(const Source& src, std::size_t n, const OracleLimits& limits = {},
                 Execution exec = Execution::Parallel);
std::size_t h_rd(const Source& src, std::size_t n, const OracleLimits& limits = {});
std::size_t h_ma(const Source& src, std::size_t n, const OracleLimits& limits = {},
                 Execution exec = Execution::Parallel);
std::size_t h_md(const Source& src, std::size_t n, const OracleLimits& limits = {});

std::size_t depth(DepthKind kind, const Source& src, std::size_t n, const OracleLimits& limits = {},
                  Execution exec = Execution::Parallel);

/// Running maximum.
std::vector<std::size_t> smoothed(std::span<const std::size_t> h);

struct DepthRow {
    std::size_t n = 0;
    std::uint64_t lang_size = 0;
    /// Indexed by DepthKind; nullopt when the cell exceeded its cap.
    std::array<std::optional<std::size_t>, 4> h{};
    std::array<std::optional<std::size_t>, 4> H{};
};

struct DepthTable {
    std::vector<DepthRow> rows;  // n = 1 .. n_max
    bool complete() const noexcept;
};

/// All four depths and their smoothed forms for n = 1..n_max. Cells over a
/// cap are omitted, and so is every smoothed value that would depend on them.
DepthTable depth_report(const Source& src, std::size_t n_max, const OracleLimits& limits = {},
                        Execution exec = Execution::Parallel);

/// Human-readable descriptions of violated table invariants; empty when sound.
std::vector<std::string> check_invariants(const DepthTable& table);

/// Columns: n, |L(n)|, h_rd, H_rd, h_ra, H_ra, h_md, H_md, h_ma, H_ma.
std::string to_tsv(const DepthTable& table);

/// Worker thread count for the parallel kernels (no-op without OpenMP).
void set_thread_count(int threads);

}  // namespace rfl::depth
