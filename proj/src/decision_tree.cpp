#include "rfl/decision_tree.hpp"

#include <algorithm>
#include <set>

#include "rfl/error.hpp"

namespace rfl::trees {

using Node = DecisionTree::Node;
using Kind = DecisionTree::Kind;

std::vector<DecisionTree::CompletePath> DecisionTree::complete_paths() const {
    std::vector<CompletePath> out;
    if (nodes.empty()) return out;
    CompletePath cur;
    auto walk = [&](auto&& self, std::size_t v) -> void {
        const Node& node = nodes[v];
        if (node.kind == Kind::Terminal) {
            cur.terminal = v;
            out.push_back(cur);
            return;
        }
        for (const auto& [letter, child] : node.children) {
            if (node.kind == Kind::Query) cur.queries.emplace_back(node.position, *letter);
            self(self, child);
            if (node.kind == Kind::Query) cur.queries.pop_back();
        }
    };
    walk(walk, 0);
    return out;
}

std::size_t DecisionTree::depth() const {
    std::size_t d = 0;
    for (const auto& p : complete_paths()) d = std::max(d, p.queries.size());
    return d;
}

bool DecisionTree::is_deterministic() const {
    if (nodes.empty() || nodes[0].children.size() != 1) return false;
    for (const Node& node : nodes) {
        if (node.kind != Kind::Query) continue;
        std::set<Letter> seen;
        for (const auto& [letter, child] : node.children)
            if (!letter || !seen.insert(*letter).second) return false;
    }
    return true;
}

namespace {

// All words of length n over k letters, lexicographic.
std::vector<Word> all_words(std::size_t n, std::size_t k) {
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

}  // namespace

std::vector<Word> path_words(const DecisionTree::CompletePath& path, std::size_t n, std::size_t k) {
    std::vector<Word> out;
    for (auto& w : all_words(n, k)) {
        bool ok = std::all_of(path.queries.begin(), path.queries.end(),
                              [&](const auto& q) { return w[q.first - 1] == q.second; });
        if (ok) out.push_back(std::move(w));
    }
    return out;
}

bool solves(const DecisionTree& tree, const std::vector<Word>& lang, std::size_t n, std::size_t k,
            Problem problem, Mode mode) {
    if (mode == Mode::Deterministic && !tree.is_deterministic()) return false;
    auto in_lang = [&](const Word& w) { return std::find(lang.begin(), lang.end(), w) != lang.end(); };
    for (const Node& node : tree.nodes)
        if (node.kind == Kind::Terminal && problem == Problem::Recognition && !in_lang(node.word)) return false;

    const auto paths = tree.complete_paths();
    std::vector<std::vector<Word>> covered;
    covered.reserve(paths.size());
    for (const auto& p : paths) covered.push_back(path_words(p, n, k));

    const auto required = problem == Problem::Recognition ? lang : all_words(n, k);
    for (const Word& w : required) {
        bool reached = false;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (std::find(covered[i].begin(), covered[i].end(), w) == covered[i].end()) continue;
            reached = true;
            const Node& leaf = tree.nodes[paths[i].terminal];
            if (problem == Problem::Recognition ? leaf.word != w : leaf.member != in_lang(w)) return false;
        }
        if (!reached) return false;
    }
    return true;
}

namespace {

// Partial assignment: rho[i] = letter, or -1 when position i is free.
using Assignment = std::vector<int>;

bool consistent(const Word& w, const Assignment& rho) {
    for (std::size_t i = 0; i < rho.size(); ++i)
        if (rho[i] >= 0 && w[i] != rho[i]) return false;
    return true;
}

std::size_t fixed_count(const Assignment& rho) {
    return static_cast<std::size_t>(std::count_if(rho.begin(), rho.end(), [](int x) { return x >= 0; }));
}

class Search {
public:
    Search(std::vector<Word> lang, std::size_t n, std::size_t k, Problem problem)
        : lang_(std::move(lang)), universe_(all_words(n, k)), n_(n), k_(k), problem_(problem) {}

    ExplicitResult nondeterministic() {
        // A nondeterministic tree is a set of labeled paths; each path fixes
        // some positions and must be pure for the problem.
        std::vector<Assignment> cubes;
        Assignment rho(n_, -1);
        auto gen = [&](auto&& self, std::size_t i) -> void {
            if (i == n_) {
                cubes.push_back(rho);
                return;
            }
            for (int a = -1; a < static_cast<int>(k_); ++a) {
                rho[i] = a;
                self(self, i + 1);
            }
            rho[i] = -1;
        };
        gen(gen, 0);
        std::stable_sort(cubes.begin(), cubes.end(),
                         [](const Assignment& a, const Assignment& b) { return fixed_count(a) < fixed_count(b); });

        const auto& required = problem_ == Problem::Recognition ? lang_ : universe_;
        for (std::size_t d = 0; d <= n_; ++d) {
            DecisionTree tree;
            tree.nodes.push_back(Node{});
            bool all = true;
            std::vector<const Assignment*> used;
            for (const Word& w : required) {
                const Assignment* hit = nullptr;
                for (const auto& c : cubes) {
                    if (fixed_count(c) > d) break;
                    if (consistent(w, c) && pure(c)) {
                        hit = &c;
                        break;
                    }
                }
                if (!hit) {
                    all = false;
                    break;
                }
                if (std::find(used.begin(), used.end(), hit) == used.end()) used.push_back(hit);
            }
            if (!all) continue;
            for (const Assignment* c : used) add_chain(tree, *c);
            return {d, std::move(tree)};
        }
        throw Error("internal: no nondeterministic tree found");
    }

    ExplicitResult deterministic() {
        Assignment rho(n_, -1);
        for (std::size_t d = 0; d <= n_; ++d) {
            DecisionTree tree;
            tree.nodes.push_back(Node{});
            if (auto child = build(tree, rho, d)) {
                tree.nodes[0].children.emplace_back(std::nullopt, *child);
                return {d, std::move(tree)};
            }
        }
        throw Error("internal: no deterministic tree found");
    }

private:
    std::vector<Word> members(const Assignment& rho) const {
        std::vector<Word> out;
        for (const Word& w : lang_)
            if (consistent(w, rho)) out.push_back(w);
        return out;
    }

    bool pure(const Assignment& rho) const {
        const auto m = members(rho);
        if (problem_ == Problem::Recognition) return m.size() == 1;
        std::size_t cube = 0;
        for (const Word& w : universe_) cube += consistent(w, rho) ? 1 : 0;
        return m.empty() || m.size() == cube;
    }

    std::size_t add_terminal(DecisionTree& tree, const Assignment& rho) const {
        Node leaf;
        leaf.kind = Kind::Terminal;
        const auto m = members(rho);
        if (problem_ == Problem::Recognition) {
            leaf.word = m.front();
        } else {
            leaf.member = !m.empty();
        }
        tree.nodes.push_back(std::move(leaf));
        return tree.nodes.size() - 1;
    }

    void add_chain(DecisionTree& tree, const Assignment& rho) const {
        std::size_t parent = 0;
        std::optional<Letter> label;
        for (std::size_t i = 0; i < n_; ++i) {
            if (rho[i] < 0) continue;
            Node q;
            q.kind = Kind::Query;
            q.position = i + 1;
            tree.nodes.push_back(std::move(q));
            tree.nodes[parent].children.emplace_back(label, tree.nodes.size() - 1);
            parent = tree.nodes.size() - 1;
            label = static_cast<Letter>(rho[i]);
        }
        std::size_t leaf = add_terminal(tree, rho);
        tree.nodes[parent].children.emplace_back(label, leaf);
    }

    // Deterministic subtree for the words consistent with rho within `budget`
    // queries; returns the index of its top node.
    std::optional<std::size_t> build(DecisionTree& tree, Assignment& rho, std::size_t budget) const {
        const auto m = members(rho);
        const bool done = problem_ == Problem::Recognition ? m.size() <= 1 : pure(rho);
        if (done) {
            if (problem_ == Problem::Recognition && m.empty()) {
                // Only reachable at the root of an empty slice.
                Node leaf;
                leaf.kind = Kind::Terminal;
                tree.nodes.push_back(std::move(leaf));
                return tree.nodes.size() - 1;
            }
            return add_terminal(tree, rho);
        }
        if (budget == 0) return std::nullopt;
        const std::size_t mark = tree.nodes.size();
        for (std::size_t i = 0; i < n_; ++i) {
            if (rho[i] >= 0) continue;
            Node q;
            q.kind = Kind::Query;
            q.position = i + 1;
            tree.nodes.push_back(std::move(q));
            const std::size_t self = tree.nodes.size() - 1;
            bool ok = true;
            for (std::size_t a = 0; a < k_ && ok; ++a) {
                rho[i] = static_cast<int>(a);
                if (problem_ == Problem::Recognition && members(rho).empty()) continue;
                auto child = build(tree, rho, budget - 1);
                if (child)
                    tree.nodes[self].children.emplace_back(static_cast<Letter>(a), *child);
                else
                    ok = false;
            }
            rho[i] = -1;
            if (ok) return self;
            tree.nodes.resize(mark);
        }
        return std::nullopt;
    }

    std::vector<Word> lang_;
    std::vector<Word> universe_;
    std::size_t n_, k_;
    Problem problem_;
};

}  // namespace

ExplicitResult explicit_tree_depth(const Source& src, std::size_t n, Problem problem, Mode mode) {
    if (n > 4) throw PreconditionError("explicit tree search is limited to n <= 4");
    if (n == 0) throw PreconditionError("depth functions are defined for n >= 1");
    if (src.alphabet().size() > 3) throw PreconditionError("explicit tree search supports at most 3 letters");
    auto lang = enumerate(src, n);
    if (lang.empty() && problem == Problem::Recognition) {
        // Empty slice: depth 0 by convention; the tree is a bare root.
        DecisionTree tree;
        tree.nodes.push_back(Node{});
        return {0, std::move(tree)};
    }
    Search search(std::move(lang), n, src.alphabet().size(), problem);
    return mode == Mode::Deterministic ? search.deterministic() : search.nondeterministic();
}

}  // namespace rfl::trees
