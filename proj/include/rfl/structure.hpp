#pragma once

// Cycle structure of a source: strongly connected components, the simple
// test, elementary cycles, cyclic length, periodic words and the dependence
// relation between cycles, plus the hardness witness families used to show
// linear growth of nondeterministic recognition depth.

#include <cstddef>
#include <optional>
#include <vector>

#include "rfl/source.hpp"

namespace rfl {

/// Elementary cycle v_1 -> v_2 -> ... -> v_p -> v_1. letters[i] labels the
/// edge leaving nodes[i]. Rotated to start at its earliest-declared node.
struct Cycle {
    std::vector<NodeId> nodes;
    Word letters;

    std::size_t length() const noexcept { return nodes.size(); }
    bool contains(NodeId v) const noexcept;
    bool operator==(const Cycle&) const = default;
};

struct Condensation {
    /// Components in topological order (edges only go to later components).
    /// Each component lists its nodes in declaration order.
    std::vector<std::vector<NodeId>> components;
    std::vector<bool> is_cycle_component;
    std::vector<bool> has_edge;  // at least one edge inside the component
    std::vector<std::pair<std::size_t, std::size_t>> dag_edges;
    std::size_t initial_component = 0;
    /// component_of[q], or SIZE_MAX for unreachable nodes.
    std::vector<std::size_t> component_of;
};

/// SCC partition of the subgraph reachable from the initial node.
Condensation condense(const Source& src);

struct SimpleResult {
    bool simple = true;
    /// First component (topological order) that contains an edge but is not
    /// a single elementary cycle.
    std::optional<std::size_t> offending_component;
};

SimpleResult is_simple(const Source& src);
SimpleResult is_simple(const Condensation& cond);

/// One cycle per cycle-shaped component, ordered by starting node.
/// Throws PreconditionError for a non-simple source.
std::vector<Cycle> elementary_cycles(const Source& src);

/// Maximum number of elementary cycles met by a path from the initial node.
/// Throws PreconditionError for a non-simple source.
std::size_t cyclic_length(const Source& src);

/// First k letters of the infinite word read around `c` starting at `v`.
Word periodic_prefix(const Cycle& c, NodeId v, std::size_t k);

/// Minimal period of that infinite word; always divides c.length().
std::size_t min_period(const Cycle& c, NodeId v);

struct DependenceWitness {
    Cycle c1, c2;
    NodeId v1 = kNoNode, v2 = kNoNode;
    Word pi;  // path word from v1 to v2
    std::size_t r = 1;
    std::size_t pi_length() const noexcept { return pi.size(); }
};

struct DependenceOptions {
    /// Reject the empty path between anchors.
    bool require_positive_path = false;
};

/// Witness of dependence, or nullopt for an independent source.
/// Throws PreconditionError for a non-simple source.
std::optional<DependenceWitness> is_dependent(const Source& src, const DependenceOptions& opts = {});

enum class WitnessKind { NotSimple, DependentSimple };

/// Words alpha*base^i and alpha*base^j*deviant*base^(i-j-1), 0 <= j < i, all
/// lie in L(a + i*block_length) and need a certificate of size >= i for the
/// first of them.
struct WitnessFamily {
    WitnessKind kind = WitnessKind::NotSimple;
    Word alpha;
    Word base;
    Word deviant;
    std::size_t block_length = 0;
    std::size_t a() const noexcept { return alpha.size(); }

    /// The anchor node and the two cycles the family was built from.
    NodeId anchor = kNoNode;
    Cycle c1, c2;

    /// alpha * base^i when j is nullopt, otherwise the j-th deviant word.
    Word member(std::size_t i, std::optional<std::size_t> j = std::nullopt) const;
};

/// Throws PreconditionError for an independent simple source.
WitnessFamily hardness_witness(const Source& src, const DependenceOptions& opts = {});

}  // namespace rfl
