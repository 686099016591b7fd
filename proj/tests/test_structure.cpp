#include <doctest.h>

#include <algorithm>
#include <set>

#include "rfl/error.hpp"
#include "rfl/structure.hpp"
#include "support.hpp"

using namespace rfl;
using namespace rfl::testing;

namespace {

Source parse(const std::string& body) { return parse_source("alphabet: 0 1\n" + body); }

Cycle cycle_of(const Source& src, std::vector<std::string> names, const std::string& letters) {
    Cycle c;
    for (const auto& n : names) c.nodes.push_back(*src.find_node(n));
    c.letters = src.alphabet().parse_word(letters);
    return c;
}

// Longest number of cycle components on a path, by brute force over all
// simple paths of the component DAG.
std::size_t brute_cl(const Condensation& cond) {
    std::size_t best = 0;
    auto walk = [&](auto&& self, std::size_t comp, std::size_t acc) -> void {
        acc += cond.is_cycle_component[comp] ? 1 : 0;
        best = std::max(best, acc);
        for (auto [from, to] : cond.dag_edges)
            if (from == comp) self(self, to, acc);
    };
    walk(walk, cond.initial_component, 0);
    return best;
}

}  // namespace

TEST_SUITE("condense") {
    TEST_CASE("components are in topological order") {
        for (const auto& name : reference_fixtures()) {
            CAPTURE(name);
            auto src = fixture(name);
            auto cond = condense(src);
            CHECK(cond.component_of[static_cast<std::size_t>(src.initial())] == cond.initial_component);
            for (const auto& e : src.edges()) {
                auto a = cond.component_of[static_cast<std::size_t>(e.from)];
                auto b = cond.component_of[static_cast<std::size_t>(e.to)];
                CHECK(a <= b);
            }
            for (auto [from, to] : cond.dag_edges) CHECK(from < to);
        }
    }

    TEST_CASE("mutual reachability agrees with components") {
        for (const auto& name : reference_fixtures()) {
            auto src = fixture(name);
            auto cond = condense(src);
            const auto n = static_cast<NodeId>(src.node_count());
            for (NodeId p = 0; p < n; ++p)
                for (NodeId q = 0; q < n; ++q) {
                    bool same = shortest_path_word(src, p, q) && shortest_path_word(src, q, p);
                    CHECK(same == (cond.component_of[static_cast<std::size_t>(p)] ==
                                   cond.component_of[static_cast<std::size_t>(q)]));
                }
        }
    }

    TEST_CASE("unreachable nodes have no component") {
        auto src = parse("nodes: a b\ninitial: a\nterminal: all\nedge: b 0 a\n");
        auto cond = condense(src);
        CHECK(cond.components.size() == 1);
        CHECK(cond.component_of[1] == SIZE_MAX);
    }
}

TEST_SUITE("is_simple") {
    TEST_CASE("reference sources") {
        CHECK(is_simple(fixture("i1")).simple);
        CHECK(is_simple(fixture("i2")).simple);
        CHECK(is_simple(fixture("i3")).simple);
        CHECK(is_simple(fixture("i4")).simple);
        CHECK(is_simple(fixture("alpha_0")).simple);
        CHECK(is_simple(fixture("alpha_01")).simple);
        CHECK_FALSE(is_simple(fixture("i5")).simple);
        CHECK_FALSE(is_simple(fixture("alpha_00")).simple);
        CHECK_FALSE(is_simple(fixture("alpha_010")).simple);
        CHECK_FALSE(is_simple(fixture("alpha_011")).simple);
    }

    TEST_CASE("simple iff no node lies on two elementary cycles") {
        for (const auto& name : reference_fixtures()) {
            CAPTURE(name);
            auto src = fixture(name);
            auto cycles = brute_elementary_cycles(src);
            std::vector<int> on(src.node_count(), 0);
            for (const auto& c : cycles)
                for (NodeId v : c) ++on[static_cast<std::size_t>(v)];
            bool brute = std::all_of(on.begin(), on.end(), [](int x) { return x <= 1; });
            CHECK(is_simple(src).simple == brute);
        }
    }

    TEST_CASE("two-node cycle is simple, adding a chord breaks it") {
        auto ring = parse("nodes: a b\ninitial: a\nterminal: all\nedge: a 0 b\nedge: b 1 a\n");
        CHECK(is_simple(ring).simple);
        auto chord = parse("nodes: a b\ninitial: a\nterminal: all\nedge: a 0 b\nedge: b 1 a\nedge: b 0 b\n");
        auto r = is_simple(chord);
        CHECK_FALSE(r.simple);
        REQUIRE(r.offending_component);
        CHECK(condense(chord).components[*r.offending_component].size() == 2);
    }
}

TEST_SUITE("elementary_cycles and cyclic_length") {
    TEST_CASE("match brute-force enumeration on simple fixtures") {
        for (const auto& name : reference_fixtures()) {
            CAPTURE(name);
            auto src = fixture(name);
            if (!is_simple(src).simple) {
                CHECK_THROWS_AS(elementary_cycles(src), PreconditionError);
                CHECK_THROWS_AS(cyclic_length(src), PreconditionError);
                continue;
            }
            auto cycles = elementary_cycles(src);
            std::set<std::vector<NodeId>> got, want;
            for (const auto& c : cycles) {
                got.insert(c.nodes);
                CHECK(c.nodes.front() == *std::min_element(c.nodes.begin(), c.nodes.end()));
                for (std::size_t i = 0; i < c.length(); ++i)
                    CHECK(src.next(c.nodes[i], c.letters[i]) == c.nodes[(i + 1) % c.length()]);
            }
            for (const auto& c : brute_elementary_cycles(src)) want.insert(c);
            CHECK(got == want);
            CHECK(cyclic_length(src) == brute_cl(condense(src)));
        }
    }

    TEST_CASE("cyclic lengths of the reference sources") {
        CHECK(cyclic_length(fixture("i1")) == 0);
        CHECK(cyclic_length(fixture("i2")) == 1);
        CHECK(cyclic_length(fixture("i3")) == 2);
        CHECK(cyclic_length(fixture("i4")) == 2);
        CHECK(cyclic_length(fixture("alpha_0")) == 1);
        CHECK(cyclic_length(fixture("alpha_01")) == 2);
    }

    TEST_CASE("branching DAG takes the longer branch") {
        auto src = parse("nodes: s a b c\ninitial: s\nterminal: all\n"
                         "edge: s 0 a\nedge: s 1 b\nedge: a 0 a\nedge: b 1 c\nedge: b 0 b\nedge: c 1 c\n");
        CHECK(cyclic_length(src) == 2);
        CHECK(elementary_cycles(src).size() == 3);
    }
}

TEST_SUITE("periods") {
    TEST_CASE("periodic prefix and minimal period") {
        auto src = parse("nodes: a b c d\ninitial: a\nterminal: all\n"
                         "edge: a 0 b\nedge: b 1 c\nedge: c 0 d\nedge: d 1 a\n");
        auto c = elementary_cycles(src).at(0);
        CHECK(c == cycle_of(src, {"a", "b", "c", "d"}, "0101"));
        CHECK(src.alphabet().format(periodic_prefix(c, 1, 6)) == "101010");
        CHECK(min_period(c, 0) == 2);
        CHECK(min_period(c, 1) == 2);
        auto d = cycle_of(src, {"a", "b", "c"}, "001");
        CHECK(min_period(d, 0) == 3);
        auto e = cycle_of(src, {"a", "b", "c"}, "000");
        CHECK(min_period(e, 2) == 1);
    }

    TEST_CASE("minimal period matches brute force") {
        for (std::size_t len = 1; len <= 8; ++len)
            for (const auto& w : all_words(len, 2)) {
                Cycle c;
                for (std::size_t i = 0; i < len; ++i) c.nodes.push_back(static_cast<NodeId>(i));
                c.letters = w;
                for (NodeId v = 0; v < static_cast<NodeId>(len); ++v) {
                    auto inf = periodic_prefix(c, v, 3 * len);
                    std::size_t brute = 1;
                    while (true) {
                        bool ok = true;
                        for (std::size_t i = brute; i < inf.size() && ok; ++i) ok = inf[i] == inf[i - brute];
                        if (ok) break;
                        ++brute;
                    }
                    CHECK(min_period(c, v) == brute);
                    CHECK(len % min_period(c, v) == 0);
                }
            }
    }
}

TEST_SUITE("is_dependent") {
    TEST_CASE("I_4: two 0-loops joined by 1") {
        auto src = fixture("i4");
        auto dep = is_dependent(src);
        REQUIRE(dep);
        CHECK(dep->c1 == cycle_of(src, {"q0"}, "0"));
        CHECK(dep->c2 == cycle_of(src, {"q1"}, "0"));
        CHECK(src.alphabet().format(dep->pi) == "1");
        CHECK(dep->r == 1);
    }

    TEST_CASE("independent reference sources") {
        CHECK_FALSE(is_dependent(fixture("i1")));
        CHECK_FALSE(is_dependent(fixture("i2")));
        CHECK_FALSE(is_dependent(fixture("i3")));
        CHECK_FALSE(is_dependent(fixture("alpha_0")));
        CHECK_FALSE(is_dependent(fixture("alpha_01")));
        CHECK_THROWS_AS(is_dependent(fixture("i5")), PreconditionError);
    }

    TEST_CASE("witness is internally consistent") {
        // (01)* then 1, then (10)*: the second cycle read from its entry gives 10 10 ...
        auto src = parse("nodes: a b c d\ninitial: a\nterminal: all\n"
                         "edge: a 0 b\nedge: b 1 a\nedge: a 1 c\nedge: c 1 d\nedge: d 0 c\n");
        auto dep = is_dependent(src);
        REQUIRE(dep);
        CHECK(dep->r == 2);
        CHECK(dep->pi_length() % dep->r == 0);
        CHECK(src.run(dep->v1, dep->pi) == dep->v2);
        CHECK(periodic_prefix(dep->c1, dep->v1, 12) == periodic_prefix(dep->c2, dep->v2, 12));
    }

    TEST_CASE("path length must be a multiple of the period") {
        // Both cycles read (01)^w from their first node, but every path between
        // matching anchors has odd length.
        auto odd = parse("nodes: a b c d\ninitial: a\nterminal: all\n"
                         "edge: a 0 b\nedge: b 1 a\nedge: a 1 c\nedge: c 0 d\nedge: d 1 c\n");
        CHECK_FALSE(is_dependent(odd));
        auto even = parse("nodes: a b x c d\ninitial: a\nterminal: all\n"
                          "edge: a 0 b\nedge: b 1 a\nedge: a 1 x\nedge: x 1 c\nedge: c 0 d\nedge: d 1 c\n");
        auto dep = is_dependent(even);
        REQUIRE(dep);
        CHECK(dep->r == 2);
        CHECK(even.name(dep->v1) == "a");
        CHECK(even.name(dep->v2) == "c");
        CHECK(even.alphabet().format(dep->pi) == "11");
    }

    TEST_CASE("different periodic words are independent") {
        auto src = parse("nodes: a b c\ninitial: a\nterminal: all\n"
                         "edge: a 0 a\nedge: a 1 b\nedge: b 1 c\nedge: c 0 b\n");
        CHECK_FALSE(is_dependent(src));
    }

    TEST_CASE("empty path is admissible unless positive paths are required") {
        // The same cycle never pairs with itself, so empty paths only arise between
        // anchors on different cycles, which are distinct nodes. Positive mode is
        // therefore equivalent on every source here.
        for (const auto& name : reference_fixtures()) {
            auto src = fixture(name);
            if (!is_simple(src).simple) continue;
            CHECK(is_dependent(src).has_value() == is_dependent(src, {true}).has_value());
        }
    }
}

TEST_SUITE("hardness_witness") {
    TEST_CASE("I(00) uses the 1-loop and the 01-cycle at λ") {
        auto src = fixture("alpha_00");
        auto fam = hardness_witness(src);
        CHECK(fam.kind == WitnessKind::NotSimple);
        CHECK(src.name(fam.anchor) == "λ");
        CHECK(fam.alpha.empty());
        CHECK(src.alphabet().format(fam.base) == "01");
        CHECK(src.alphabet().format(fam.deviant) == "11");
        CHECK(fam.block_length == 2);
    }

    TEST_CASE("I_4 dependent family") {
        auto src = fixture("i4");
        auto fam = hardness_witness(src);
        CHECK(fam.kind == WitnessKind::DependentSimple);
        CHECK(src.alphabet().format(fam.base) == "0");
        CHECK(src.alphabet().format(fam.deviant) == "1");
        CHECK(fam.block_length == 1);
        CHECK(src.alphabet().format(fam.member(3)) == "000");
        CHECK(src.alphabet().format(fam.member(3, 1)) == "010");
    }

    TEST_CASE("independent simple sources have none") {
        CHECK_THROWS_AS(hardness_witness(fixture("i3")), PreconditionError);
        CHECK_THROWS_AS(hardness_witness(fixture("i0")), PreconditionError);
    }

    TEST_CASE("family members lie in L and force certificates of size i") {
        for (const auto& name : reference_fixtures()) {
            auto src = fixture(name);
            if (!validate(src).is_t_reduced) continue;
            if (is_simple(src).simple && !is_dependent(src)) continue;
            CAPTURE(name);
            auto fam = hardness_witness(src);
            CHECK(fam.base.size() == fam.block_length);
            CHECK(fam.deviant.size() == fam.block_length);
            CHECK(fam.base != fam.deviant);
            for (std::size_t i = 1; i <= 4; ++i) {
                const std::size_t n = fam.a() + i * fam.block_length;
                if (n > 14) break;
                auto u = fam.member(i);
                CHECK(u.size() == n);
                CHECK(contains(src, u));
                for (std::size_t j = 0; j < i; ++j) {
                    auto w = fam.member(i, j);
                    CHECK(w.size() == n);
                    CHECK(contains(src, w));
                }
                CHECK(brute_certificate(brute_slice(src, n), u) >= i);
            }
        }
    }

    TEST_CASE("hand-built dependent sources yield sound families") {
        // Two cycles with the same periodic word joined by a path.
        const std::vector<std::string> bodies{
            "nodes: a b x c d\ninitial: a\nterminal: all\n"
            "edge: a 0 b\nedge: b 1 a\nedge: a 1 x\nedge: x 1 c\nedge: c 0 d\nedge: d 1 c\n",
            "nodes: a b c\ninitial: a\nterminal: all\nedge: a 1 a\nedge: a 0 b\nedge: b 0 c\nedge: c 1 c\n",
        };
        for (const auto& body : bodies) {
            auto src = parse(body);
            REQUIRE(is_simple(src).simple);
            REQUIRE(is_dependent(src));
            auto fam = hardness_witness(src);
            for (std::size_t i = 1; fam.a() + i * fam.block_length <= 12; ++i) {
                auto u = fam.member(i);
                CHECK(contains(src, u));
                for (std::size_t j = 0; j < i; ++j) CHECK(contains(src, fam.member(i, j)));
                CHECK(brute_certificate(brute_slice(src, u.size()), u) >= i);
            }
        }
    }
}
