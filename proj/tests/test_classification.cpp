#include <doctest.h>

#include "rfl/classification.hpp"
#include "rfl/error.hpp"
#include "support.hpp"

using namespace rfl;
using namespace rfl::testing;

TEST_SUITE("classify") {
    TEST_CASE("I_1..I_5 fall in F1..F5") {
        CHECK(classify(fixture("i1")).class_id == ComplexityClass::F1);
        CHECK(classify(fixture("i2")).class_id == ComplexityClass::F2);
        CHECK(classify(fixture("i3")).class_id == ComplexityClass::F3);
        CHECK(classify(fixture("i4")).class_id == ComplexityClass::F4);
        CHECK(classify(fixture("i5")).class_id == ComplexityClass::F5);
    }

    TEST_CASE("details for I_3") {
        auto c = classify(fixture("i3"));
        CHECK(c.simple);
        CHECK(c.simple_independent);
        REQUIRE(c.cl);
        CHECK(*c.cl == 2);
        CHECK_FALSE(c.finite);
        CHECK_FALSE(c.complement_empty);
        CHECK(c.factorial);
        CHECK(std::holds_alternative<std::monostate>(c.witness));
        CHECK(c.predicted == GrowthProfile{GrowthClass::Logarithmic, GrowthClass::Constant, GrowthClass::Linear,
                                           GrowthClass::Linear});
    }

    TEST_CASE("witnesses") {
        auto c4 = classify(fixture("i4"));
        CHECK_FALSE(c4.simple_independent);
        CHECK(std::holds_alternative<DependenceWitness>(c4.witness));
        REQUIRE(c4.cl);
        CHECK(*c4.cl == 2);

        auto c5 = classify(fixture("i5"));
        CHECK_FALSE(c5.simple);
        CHECK(c5.complement_empty);
        REQUIRE(std::holds_alternative<NotSimpleComponent>(c5.witness));
        CHECK(std::get<NotSimpleComponent>(c5.witness).nodes.size() == 1);
    }

    TEST_CASE("forbidden-word fixtures") {
        CHECK(classify(fixture("alpha_0")).class_id == ComplexityClass::F2);
        CHECK(classify(fixture("alpha_01")).class_id == ComplexityClass::F3);
        CHECK(classify(fixture("alpha_00")).class_id == ComplexityClass::F4);
        CHECK(classify(fixture("alpha_010")).class_id == ComplexityClass::F4);
        CHECK(classify(fixture("alpha_011")).class_id == ComplexityClass::F4);
    }

    TEST_CASE("requires a t-reduced source") {
        CHECK_THROWS_AS(classify(fixture("i0")), PreconditionError);
    }

    TEST_CASE("non-factorial input is classified with a caveat") {
        auto chain = parse_source("alphabet: 0 1\nnodes: q0 q1 q2\ninitial: q0\nterminal: all\n"
                                  "edge: q0 0 q1\nedge: q1 1 q2\n");
        auto c = classify(chain);
        CHECK(c.class_id == ComplexityClass::F1);
        CHECK_FALSE(c.factorial);
    }

    TEST_CASE("representation independence") {
        // 0* drawn as a loop and as a two-node cycle.
        auto one = fixture("i2");
        auto two = parse_source("alphabet: 0 1\nnodes: a b\ninitial: a\nterminal: all\nedge: a 0 b\nedge: b 0 a\n");
        for (std::size_t n = 0; n <= 10; ++n) REQUIRE(enumerate(one, n) == enumerate(two, n));
        CHECK(classify(one).class_id == classify(two).class_id);

        auto e_star = fixture("i5");
        auto e_star2 = parse_source("alphabet: 0 1\nnodes: a b\ninitial: a\nterminal: all\n"
                                    "edge: a 0 b\nedge: a 1 a\nedge: b 0 a\nedge: b 1 b\n");
        CHECK(classify(e_star).class_id == classify(e_star2).class_id);
    }

    TEST_CASE("Sigma* over three letters is F5, a chain is F1") {
        auto all3 = parse_source("alphabet: a b c\nnodes: q\ninitial: q\nterminal: all\n"
                                 "edge: q a q\nedge: q b q\nedge: q c q\n");
        CHECK(classify(all3).class_id == ComplexityClass::F5);
        auto empty_lang = parse_source("alphabet: 0 1\nnodes: q\ninitial: q\nterminal: all\n");
        CHECK(classify(empty_lang).class_id == ComplexityClass::F1);
    }
}

TEST_SUITE("predicted_growth") {
    TEST_CASE("table") {
        using G = GrowthClass;
        CHECK(predicted_growth(ComplexityClass::F1) == GrowthProfile{G::Constant, G::Constant, G::Constant, G::Constant});
        CHECK(predicted_growth(ComplexityClass::F2) == GrowthProfile{G::Constant, G::Constant, G::Linear, G::Linear});
        CHECK(predicted_growth(ComplexityClass::F3) == GrowthProfile{G::Logarithmic, G::Constant, G::Linear, G::Linear});
        CHECK(predicted_growth(ComplexityClass::F4) == GrowthProfile{G::Linear, G::Linear, G::Linear, G::Linear});
        CHECK(predicted_growth(ComplexityClass::F5) == GrowthProfile{G::Linear, G::Linear, G::Constant, G::Constant});
        CHECK(to_string(G::Constant) == "O(1)");
        CHECK(to_string(G::Logarithmic) == "Theta(log n)");
        CHECK(to_string(G::Linear) == "Theta(n)");
        CHECK(to_string(DepthKind::ma) == "ma");
    }
}

TEST_SUITE("ra_constant_bound") {
    TEST_CASE("d(4d+1)") {
        CHECK(ra_constant_bound(fixture("i3")) == 18);
        CHECK(ra_constant_bound(fixture("i2")) == 5);
        CHECK(ra_constant_bound(fixture("alpha_01")) == 18);
        CHECK_THROWS_AS(ra_constant_bound(fixture("i4")), PreconditionError);
        CHECK_THROWS_AS(ra_constant_bound(fixture("i5")), PreconditionError);
    }
}
