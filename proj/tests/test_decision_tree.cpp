#include <doctest.h>

#include "rfl/decision_tree.hpp"
#include "rfl/depth.hpp"
#include "rfl/error.hpp"
#include "support.hpp"

using namespace rfl;
using namespace rfl::testing;
using namespace rfl::trees;

namespace {

using Tree = DecisionTree;

std::size_t add(Tree& t, Tree::Node node) {
    t.nodes.push_back(std::move(node));
    return t.nodes.size() - 1;
}

Tree::Node query(std::size_t pos) {
    Tree::Node n;
    n.kind = Tree::Kind::Query;
    n.position = pos;
    return n;
}

Tree::Node answer(Word w) {
    Tree::Node n;
    n.kind = Tree::Kind::Terminal;
    n.word = std::move(w);
    return n;
}

Tree::Node verdict(bool member) {
    Tree::Node n;
    n.kind = Tree::Kind::Terminal;
    n.member = member;
    return n;
}

// Deterministic tree for L(2) of I_3 = {00, 01, 11}: ask position 1, then 2 if it was 0.
Tree i3_recognizer() {
    Tree t;
    add(t, {});
    auto q1 = add(t, query(1));
    t.nodes[0].children.push_back({std::nullopt, q1});
    auto q2 = add(t, query(2));
    t.nodes[q1].children.push_back({Letter{0}, q2});
    auto leaf11 = add(t, answer({1, 1}));
    t.nodes[q1].children.push_back({Letter{1}, leaf11});
    auto leaf00 = add(t, answer({0, 0}));
    auto leaf01 = add(t, answer({0, 1}));
    t.nodes[q2].children.push_back({Letter{0}, leaf00});
    t.nodes[q2].children.push_back({Letter{1}, leaf01});
    return t;
}

}  // namespace

TEST_SUITE("tree basics") {
    TEST_CASE("hand-built deterministic recognizer") {
        auto t = i3_recognizer();
        auto lang = enumerate(fixture("i3"), 2);
        CHECK(t.is_deterministic());
        CHECK(t.depth() == 2);
        CHECK(t.complete_paths().size() == 3);
        CHECK(solves(t, lang, 2, 2, Problem::Recognition, Mode::Deterministic));
        CHECK(solves(t, lang, 2, 2, Problem::Recognition, Mode::Nondeterministic));
        CHECK_FALSE(solves(t, lang, 2, 2, Problem::Membership, Mode::Deterministic));
    }

    TEST_CASE("wrong answer or missing word is rejected") {
        auto lang = enumerate(fixture("i3"), 2);
        auto t = i3_recognizer();
        t.nodes.back().word = {0, 0};
        CHECK_FALSE(solves(t, lang, 2, 2, Problem::Recognition, Mode::Deterministic));

        Tree partial;
        add(partial, {});
        auto leaf = add(partial, answer({1, 1}));
        partial.nodes[0].children.push_back({std::nullopt, leaf});
        CHECK_FALSE(solves(partial, lang, 2, 2, Problem::Recognition, Mode::Nondeterministic));
    }

    TEST_CASE("nondeterministic root with several edges") {
        // L(2) of 0*: a bare root pointing at "00" suffices; for membership two
        // cubes cover E^2: x1 = 1 -> out, x2 = 1 -> out, plus x1 = 0, x2 = 0 -> in.
        auto lang = enumerate(fixture("i2"), 2);
        Tree t;
        add(t, {});
        auto a = add(t, query(1));
        auto b = add(t, query(2));
        auto c = add(t, query(1));
        auto c2 = add(t, query(2));
        t.nodes[0].children = {{std::nullopt, a}, {std::nullopt, b}, {std::nullopt, c}};
        t.nodes[a].children.push_back({Letter{1}, add(t, verdict(false))});
        t.nodes[b].children.push_back({Letter{1}, add(t, verdict(false))});
        t.nodes[c].children.push_back({Letter{0}, c2});
        t.nodes[c2].children.push_back({Letter{0}, add(t, verdict(true))});
        CHECK_FALSE(t.is_deterministic());
        CHECK(t.depth() == 2);
        CHECK(solves(t, lang, 2, 2, Problem::Membership, Mode::Nondeterministic));
        CHECK_FALSE(solves(t, lang, 2, 2, Problem::Membership, Mode::Deterministic));
        // A path asserting x1 = 1 -> in would be wrong for 10.
        t.nodes[t.nodes[a].children[0].second].member = true;
        CHECK_FALSE(solves(t, lang, 2, 2, Problem::Membership, Mode::Nondeterministic));
    }

    TEST_CASE("path_words") {
        Tree::CompletePath p;
        p.queries = {{2, 1}};
        auto ws = path_words(p, 3, 2);
        CHECK(ws.size() == 4);
        for (const auto& w : ws) CHECK(w[1] == 1);
        p.queries.push_back({2, 0});
        CHECK(path_words(p, 3, 2).empty());
        CHECK(path_words(Tree::CompletePath{}, 2, 3).size() == 9);
    }
}

TEST_SUITE("explicit_tree_depth") {
    TEST_CASE("empty recognition slice needs no queries") {
        auto r = explicit_tree_depth(fixture("i1"), 3, Problem::Recognition, Mode::Nondeterministic);
        CHECK(r.depth == 0);
        CHECK(r.tree.nodes.size() == 1);
    }

    TEST_CASE("found trees solve the problem and match the oracles") {
        for (const auto& name : reference_fixtures()) {
            auto src = fixture(name);
            for (std::size_t n = 1; n <= 3; ++n) {
                CAPTURE(name);
                CAPTURE(n);
                auto lang = enumerate(src, n);
                for (Problem problem : {Problem::Recognition, Problem::Membership})
                    for (Mode mode : {Mode::Deterministic, Mode::Nondeterministic}) {
                        auto r = explicit_tree_depth(src, n, problem, mode);
                        CHECK(r.tree.depth() == r.depth);
                        if (!(problem == Problem::Recognition && lang.empty()))
                            CHECK(solves(r.tree, lang, n, 2, problem, mode));
                        DepthKind kind = problem == Problem::Recognition
                                             ? (mode == Mode::Deterministic ? DepthKind::rd : DepthKind::ra)
                                             : (mode == Mode::Deterministic ? DepthKind::md : DepthKind::ma);
                        CHECK(r.depth == depth::depth(kind, src, n));
                    }
            }
        }
    }

    TEST_CASE("limits") {
        CHECK_THROWS_AS(explicit_tree_depth(fixture("i2"), 5, Problem::Recognition, Mode::Deterministic), Error);
        auto four = parse_source("alphabet: a b c d\nnodes: q\ninitial: q\nterminal: all\nedge: q a q\n");
        CHECK_THROWS_AS(explicit_tree_depth(four, 2, Problem::Membership, Mode::Deterministic), Error);
    }
}
