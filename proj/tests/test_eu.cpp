#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "credal/eu.hpp"
#include "oracles.hpp"

using namespace credal;
using Catch::Approx;

namespace {

Act binary(const std::string& name, double u1, ProbInterval p1, double u2, ProbInterval p2) {
    return {name, {{"e1", u1, p1}, {"e2", u2, p2}}};
}

void check_interval(const Interval& got, double lo, double hi, double tol = 1e-9) {
    CHECK(got.lo() == Approx(lo).margin(tol));
    CHECK(got.hi() == Approx(hi).margin(tol));
}

} // namespace

TEST_CASE("eu_interval on the berry acts", "[eu]") {
    check_interval(eu_interval(binary("a1", 10, {0.75, 1}, -30, {0, 0.25})), 0.0, 10.0);
    check_interval(eu_interval(binary("a2", -10, {0, 0.55}, 0, {0.45, 1})), -5.5, 0.0);
    check_interval(eu_interval(binary("point", 1, {0.5, 0.5}, -1, {0.5, 0.5})), 0.0, 0.0);
}

TEST_CASE("eu_interval three-outcome box agrees with both oracles", "[eu][oracle]") {
    const Act act{"three", {{"x", 0, {0.1, 0.5}}, {"y", 5, {0.2, 0.6}}, {"z", 10, {0.1, 0.4}}}};
    // Frozen from oracle::vertex_eu and oracle::grid_eu3(act, 1000).
    check_interval(oracle::vertex_eu(act), 3.0, 6.5);
    check_interval(oracle::grid_eu3(act, 1000), 3.0, 6.5, 1e-9);
    check_interval(eu_interval(act), 3.0, 6.5);

    const auto b = eu_bounds(act);
    CHECK(b.argmin[0] == Approx(0.5));
    CHECK(b.argmin[1] == Approx(0.4));
    CHECK(b.argmax[2] == Approx(0.4));
    CHECK(b.argmax[1] == Approx(0.5));
}

TEST_CASE("infeasible boxes are reported with the act name", "[eu]") {
    const Act heavy = binary("heavy", 1, {0.6, 1}, 0, {0.5, 1});
    const Act light = binary("light", 1, {0, 0.3}, 0, {0, 0.4});
    try {
        (void)eu_interval(heavy);
        FAIL("expected FeasibilityError");
    } catch (const FeasibilityError& e) {
        CHECK(e.act() == "heavy");
    }
    CHECK_THROWS_AS(eu_interval(light), FeasibilityError);
    DecisionProblem p{"p", {binary("ok", 1, {0, 1}, 0, {0, 1}), light}};
    CHECK_THROWS_AS(eu_all(p), FeasibilityError);
}

TEST_CASE("eu_all keeps act order", "[eu]") {
    DecisionProblem p{"berries",
                      {{"a1", {{"G", 10, {0.84, 0.88}}, {"~G", -30, {0.12, 0.16}}}},
                       {"a2", {{"H", -10, {0, 1}}, {"~H", 0, {0, 1}}}}}};
    const auto t = eu_all(p);
    REQUIRE(t.size() == 2);
    CHECK(t[0].act == "a1");
    check_interval(t[0].eu, 3.6, 5.2);
    check_interval(t[1].eu, -10.0, 0.0);

    DecisionProblem single{"one", {binary("only", 4, {0.25, 0.25}, 8, {0.75, 0.75})}};
    const auto s = eu_all(single);
    REQUIRE(s.size() == 1);
    CHECK(s[0].eu.degenerate());
    CHECK(s[0].eu.lo() == 7.0);
}

TEST_CASE("greedy matches vertex enumeration and bounds feasible samples", "[eu][oracle][property]") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto act = oracle::random_act(rng);
        const auto got = eu_interval(act);
        const auto want = oracle::vertex_eu(act);
        CHECK(got.lo() == Approx(want.lo()).margin(1e-9));
        CHECK(got.hi() == Approx(want.hi()).margin(1e-9));
        for (int k = 0; k < 20; ++k) {
            const double u = oracle::dot(act, oracle::random_feasible(act, rng));
            CHECK(u >= got.lo() - 1e-9);
            CHECK(u <= got.hi() + 1e-9);
        }
    }
}

TEST_CASE("widening a box never shrinks the utility interval", "[eu][property]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto act = oracle::random_act(rng);
        Act wider = act;
        auto& o = wider.outcomes[trial % wider.outcomes.size()];
        o.prob = ProbInterval(o.prob.lo() * u(rng), o.prob.hi() + (1.0 - o.prob.hi()) * u(rng));
        const auto a = eu_interval(act);
        const auto b = eu_interval(wider);
        CHECK(b.lo() <= a.lo() + 1e-12);
        CHECK(b.hi() >= a.hi() - 1e-12);
    }
}

TEST_CASE("degenerate boxes collapse to the dot product", "[eu][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        std::vector<double> w(n);
        double total = 0.0;
        for (auto& x : w) total += (x = u(rng) + 0.01);
        Act act{"point", {}};
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = i + 1 == n ? 1.0 - s : w[i] / total;
            s += p;
            act.outcomes.push_back({"e" + std::to_string(i), u(rng) * 20 - 10, ProbInterval::point(std::max(0.0, p))});
        }
        const auto r = eu_interval(act);
        CHECK(r.width() == 0.0);
        std::vector<double> probs;
        for (const auto& o : act.outcomes) probs.push_back(o.prob.lo());
        CHECK(r.lo() == point_eu(act, probs));
    }
}

TEST_CASE("shifting every utility shifts both endpoints", "[eu][property]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> shift(-100.0, 100.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto act = oracle::random_act(rng);
        const double c = shift(rng);
        Act moved = act;
        for (auto& o : moved.outcomes) o.utility += c;
        const auto a = eu_interval(act);
        const auto b = eu_interval(moved);
        CHECK(b.lo() == Approx(a.lo() + c).margin(1e-9));
        CHECK(b.hi() == Approx(a.hi() + c).margin(1e-9));
    }
}
