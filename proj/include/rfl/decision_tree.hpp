#pragma once

// Explicit decision trees over L(n) and an exhaustive minimum-depth search
// for tiny n. Used to cross-check the certificate and minimax formulas of the
// depth oracle against the tree definitions themselves.

#include <optional>
#include <utility>
#include <vector>

#include "rfl/source.hpp"

namespace rfl::trees {

enum class Problem { Recognition, Membership };
enum class Mode { Deterministic, Nondeterministic };

struct DecisionTree {
    enum class Kind { Root, Query, Terminal };

    struct Node {
        Kind kind = Kind::Root;
        std::size_t position = 0;  // 1-based query position
        Word word;                 // recognition answer
        bool member = false;       // membership answer
        /// (edge letter, child). Root edges carry no letter.
        std::vector<std::pair<std::optional<Letter>, std::size_t>> children;
    };

    std::vector<Node> nodes;  // nodes[0] is the root

    struct CompletePath {
        std::vector<std::pair<std::size_t, Letter>> queries;  // (position, answer)
        std::size_t terminal = 0;
    };

    std::vector<CompletePath> complete_paths() const;

    /// Maximum number of query nodes on a complete path.
    std::size_t depth() const;

    /// One root edge and pairwise different letters below every query node.
    bool is_deterministic() const;
};

/// Sigma(n, xi): the words of length n consistent with the answers on a path.
std::vector<Word> path_words(const DecisionTree::CompletePath& path, std::size_t n, std::size_t k);

/// Checks the solving conditions for `lang` = L(n) directly on every word.
bool solves(const DecisionTree& tree, const std::vector<Word>& lang, std::size_t n, std::size_t k,
            Problem problem, Mode mode);

struct ExplicitResult {
    std::size_t depth = 0;
    DecisionTree tree;
};

/// Minimum depth over all decision trees of the given type solving the
/// problem for L(n), found by exhaustive search. Requires n <= 4.
ExplicitResult explicit_tree_depth(const Source& src, std::size_t n, Problem problem, Mode mode);

}  // namespace rfl::trees
