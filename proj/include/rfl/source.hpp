#pragma once

// Sources: partial deterministic finite automata with an initial node and a
// set of terminal nodes. A source generates the words spelled by paths that
// start at the initial node and end at a terminal node.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rfl {

using Letter = std::uint8_t;
using NodeId = std::int32_t;
using Word = std::vector<Letter>;

inline constexpr NodeId kNoNode = -1;

/// Ordered set of single-character symbols (at least two).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<char> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    char symbol(Letter a) const { return symbols_.at(a); }
    const std::vector<char>& symbols() const noexcept { return symbols_; }

    std::optional<Letter> find(char c) const noexcept;

    /// Throws rfl::Error on a character outside the alphabet.
    Word parse_word(std::string_view text) const;
    std::string format(const Word& w) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<char> symbols_;
};

/// The binary alphabet {0, 1}.
Alphabet binary_alphabet();

class Source {
public:
    Source() = default;

    struct Edge {
        NodeId from;
        Letter letter;
        NodeId to;
    };

    /// Builds and checks a source. Throws rfl::Error when an invariant fails
    /// (duplicate or dangling edge, bad initial node, empty terminal set).
    Source(Alphabet alphabet, std::vector<std::string> nodes, NodeId initial,
           std::vector<NodeId> terminal, const std::vector<Edge>& edges);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept;
    const std::string& name(NodeId q) const { return names_.at(static_cast<std::size_t>(q)); }
    std::optional<NodeId> find_node(std::string_view name) const noexcept;
    NodeId initial() const noexcept { return initial_; }
    bool is_terminal(NodeId q) const { return terminal_.at(static_cast<std::size_t>(q)); }

    /// Terminal nodes in declaration order.
    std::vector<NodeId> terminal_nodes() const;

    /// Target of the edge leaving `q` labeled `a`, or kNoNode.
    NodeId next(NodeId q, Letter a) const noexcept {
        return delta_[static_cast<std::size_t>(q) * alphabet_.size() + a];
    }

    /// Node reached by reading `w` from `q`, or kNoNode when the run leaves the graph.
    NodeId run(NodeId q, const Word& w) const noexcept;

    /// Edges sorted by (source node order, alphabet order).
    std::vector<Edge> edges() const;

    bool operator==(const Source&) const = default;

private:
    Alphabet alphabet_;
    std::vector<std::string> names_;
    NodeId initial_ = 0;
    std::vector<bool> terminal_;
    std::vector<NodeId> delta_;
};

// ---- text format ---------------------------------------------------------

Source parse_source(std::string_view text);
Source load_source(const std::string& path);

/// Canonical serialization; `parse_source(to_text(s)) == s`.
std::string to_text(const Source& src);

std::string to_dot(const Source& src);

// ---- validation ----------------------------------------------------------

struct ValidationReport {
    bool is_deterministic = true;
    std::vector<NodeId> unreachable_nodes;
    std::vector<NodeId> non_terminal_nodes;
    bool is_t_reduced = false;
    std::vector<std::string> notes;
};

ValidationReport validate(const Source& src);

/// Throws PreconditionError unless every node is reachable and terminal.
void require_t_reduced(const Source& src, std::string_view operation);

struct FactorialityCounterexample {
    NodeId from;  // the word is a factor read from this node
    Word word;
};

struct FactorialityReport {
    bool is_factorial = true;
    std::optional<FactorialityCounterexample> counterexample;
};

/// Decides whether L_I is closed under taking factors.
FactorialityReport check_factorial(const Source& src);

// ---- language queries ----------------------------------------------------

struct EnumerationLimits {
    std::size_t max_length = 20;
};

bool contains(const Source& src, const Word& w);
bool contains(const Source& src, std::string_view w);

/// L(n) in lexicographic order by alphabet order.
std::vector<Word> enumerate(const Source& src, std::size_t n, const EnumerationLimits& limits = {});

/// |L(n)| by dynamic programming over (node, remaining length).
std::uint64_t count_words(const Source& src, std::size_t n, const EnumerationLimits& limits = {});

bool is_finite(const Source& src);
bool is_complement_empty(const Source& src);

/// Reachable[q] from the initial node.
std::vector<bool> reachable_nodes(const Source& src);

/// Shortest path word from `from` to `to` (alphabet-order BFS), nullopt when unreachable.
std::optional<Word> shortest_path_word(const Source& src, NodeId from, NodeId to);

}  // namespace rfl
