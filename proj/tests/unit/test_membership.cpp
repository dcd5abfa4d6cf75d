#include <doctest.h>

#include <random>
#include <stdexcept>

#include "dynes/values/membership.hpp"
#include "dynes/values/neg_ops.hpp"
#include "oracles.hpp"

using dynes::Breakpoint;
using dynes::MembershipFunction;

TEST_CASE("membership functions validate their breakpoints") {
    CHECK_THROWS_AS(MembershipFunction({{1, 0.5}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction({{1, 0.5}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction({{0, 0}, {1, 1.2}}), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction(std::vector<Breakpoint>{}), std::invalid_argument);
    CHECK_NOTHROW(MembershipFunction({{3, 0.4}}));
}

TEST_CASE("evaluation interpolates and is zero outside the breakpoints") {
    const auto t = MembershipFunction::triangle(0, 5, 10);
    CHECK(t(2.5) == doctest::Approx(0.5));
    CHECK(t(5) == 1.0);
    CHECK(t(-1) == 0.0);
    CHECK(t(11) == 0.0);

    const MembershipFunction shoulder({{70, 0}, {100, 1}, {200, 1}});
    CHECK(shoulder(200) == 1.0);
    CHECK(shoulder(200.5) == 0.0);
    CHECK(shoulder.left_limit(200) == 1.0);
    CHECK(shoulder.right_limit(200) == 0.0);
}

TEST_CASE("alpha cuts") {
    const auto t = MembershipFunction::triangle(0, 4, 8);
    auto cut = t.alpha_cut(0.5);
    REQUIRE(cut);
    CHECK(cut->lo == doctest::Approx(2));
    CHECK(cut->hi == doctest::Approx(6));
    CHECK(*t.alpha_cut(0.0) == dynes::Span{0, 8});
    CHECK(*t.alpha_cut(1.0) == dynes::Span{4, 4});
    const MembershipFunction low({{0, 0}, {1, 0.6}, {2, 0}});
    CHECK_FALSE(low.alpha_cut(0.7));
}

TEST_CASE("defuzzify: symmetric, right-angled and bimodal") {
    CHECK(dynes::defuzzify(MembershipFunction::triangle(8, 10, 12)).primary == doctest::Approx(10));

    const auto right = MembershipFunction::triangle(0, 0, 6);
    const double expect = oracle::centroid([](double x) { return x <= 6 ? 1.0 - x / 6.0 : 0.0; }, 0, 6);
    CHECK(expect == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(dynes::defuzzify(right).primary == doctest::Approx(expect).epsilon(1e-9));

    const MembershipFunction bimodal({{1, 0}, {2, 1}, {3, 0}, {7, 0}, {8, 1}, {9, 0}});
    const auto d = dynes::defuzzify(bimodal);
    REQUIRE(d.modes.size() == 2);
    CHECK(d.modes[0] == doctest::Approx(2));
    CHECK(d.modes[1] == doctest::Approx(8));
    CHECK(d.primary == doctest::Approx(2));  // equal peaks -> smallest centroid

    const MembershipFunction uneven({{1, 0}, {2, 0.5}, {3, 0}, {7, 0}, {8, 1}, {9, 0}});
    CHECK(dynes::defuzzify(uneven).primary == doctest::Approx(8));
}

TEST_CASE("defuzzify matches a numeric centroid on random trapezoids") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50, 50);
    std::uniform_real_distribution<double> w(0.1, 10);
    for (int i = 0; i < 50; ++i) {
        const double a = u(rng);
        const double b = a + w(rng);
        const double c = b + w(rng);
        const double d = c + w(rng);
        const auto mf = MembershipFunction::trapezoid(a, b, c, d);
        const double ref = oracle::centroid([&](double x) { return mf(x); }, a, d);
        CHECK(dynes::defuzzify(mf).primary == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("modes split at interior zero breakpoints") {
    const MembershipFunction f({{0, 0}, {1, 1}, {2, 0}, {3, 0}, {4, 0.5}, {5, 0}});
    const auto modes = f.modes();
    REQUIRE(modes.size() == 2);
    CHECK(modes[0].support_lo() == 0);
    CHECK(modes[0].support_hi() == 2);
    CHECK(modes[1].support_lo() == 3);
    CHECK(modes[1].height() == 0.5);
}

TEST_CASE("upper envelope of overlapping triangles") {
    const MembershipFunction fns[] = {MembershipFunction::triangle(0, 2, 4), MembershipFunction::triangle(2, 4, 6)};
    const auto env = dynes::upper_envelope(fns);
    for (double x = -1; x <= 7; x += 0.25) {
        CHECK(env(x) == doctest::Approx(std::max(fns[0](x), fns[1](x))));
    }
}
