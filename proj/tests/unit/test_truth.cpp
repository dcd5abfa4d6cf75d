#include <doctest.h>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dynes/values/truth.hpp"

using dynes::TruthOp;
using dynes::TruthValue;

namespace {

std::vector<TruthValue> grid_with_ne() {
    std::vector<TruthValue> g{TruthValue::ne()};
    for (int i = 0; i <= 10; ++i) g.push_back(TruthValue::of(i / 10.0));
    return g;
}

}  // namespace

TEST_CASE("truth values reject degrees outside the unit interval") {
    CHECK_THROWS_AS(TruthValue::of(-0.01), std::domain_error);
    CHECK_THROWS_AS(TruthValue::of(1.5), std::domain_error);
    CHECK_THROWS_AS(TruthValue::of(std::nan("")), std::domain_error);
    CHECK(TruthValue::of(0.25).degree() == 0.25);
    CHECK(TruthValue{}.is_ne());
    CHECK_THROWS_AS(TruthValue::ne().degree(), std::logic_error);
}

TEST_CASE("strong-Kleene examples") {
    CHECK(dynes::truth_and(TruthValue::falsity(), TruthValue::ne()) == TruthValue::falsity());
    CHECK(dynes::truth_and(TruthValue::ne(), TruthValue::falsity()) == TruthValue::falsity());
    CHECK(dynes::truth_or(TruthValue::of(0.3), TruthValue::of(0.7)) == TruthValue::of(0.7));
    CHECK(dynes::truth_not(TruthValue::ne()).is_ne());
    CHECK(dynes::truth_or(TruthValue::truth(), TruthValue::ne()) == TruthValue::truth());
    CHECK(dynes::truth_and(TruthValue::of(0.4), TruthValue::ne()).is_ne());
    CHECK(dynes::truth_or(TruthValue::of(0.4), TruthValue::ne()).is_ne());
}

TEST_CASE("restriction to {0,1} is boolean logic") {
    for (bool a : {false, true}) {
        for (bool b : {false, true}) {
            const TruthValue ta = a ? TruthValue::truth() : TruthValue::falsity();
            const TruthValue tb = b ? TruthValue::truth() : TruthValue::falsity();
            CHECK(dynes::truth_and(ta, tb).degree() == (a && b ? 1.0 : 0.0));
            CHECK(dynes::truth_or(ta, tb).degree() == (a || b ? 1.0 : 0.0));
        }
        const TruthValue ta = a ? TruthValue::truth() : TruthValue::falsity();
        CHECK(dynes::truth_not(ta).degree() == (a ? 0.0 : 1.0));
    }
}

TEST_CASE("de Morgan holds on the grid, NE included") {
    for (auto a : grid_with_ne()) {
        for (auto b : grid_with_ne()) {
            const TruthValue lhs = dynes::truth_not(dynes::truth_and(a, b));
            const TruthValue rhs = dynes::truth_or(dynes::truth_not(a), dynes::truth_not(b));
            REQUIRE(lhs.is_ne() == rhs.is_ne());
            if (lhs.known()) CHECK(lhs.degree() == doctest::Approx(rhs.degree()).epsilon(1e-15));
        }
    }
}

TEST_CASE("truth_combine dispatch checks arity") {
    CHECK(dynes::truth_combine(TruthOp::Not, TruthValue::of(0.25)) == TruthValue::of(0.75));
    CHECK(dynes::truth_combine(TruthOp::And, TruthValue::of(0.2), TruthValue::of(0.9)) == TruthValue::of(0.2));
    CHECK_THROWS_AS(dynes::truth_combine(TruthOp::And, TruthValue::of(0.2)), std::invalid_argument);
    CHECK_THROWS_AS(dynes::truth_combine(TruthOp::Not, TruthValue::of(0.2), TruthValue::of(0.2)),
                    std::invalid_argument);
}

TEST_CASE("satisfies treats NE as not satisfied") {
    CHECK(TruthValue::of(0.5).satisfies(0.5));
    CHECK_FALSE(TruthValue::of(0.49).satisfies(0.5));
    CHECK_FALSE(TruthValue::ne().satisfies(0.0));
}
