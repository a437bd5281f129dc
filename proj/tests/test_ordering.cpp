#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "credal/ordering.hpp"
#include "oracles.hpp"

using namespace credal;
using Catch::Approx;
using Names = std::vector<std::string>;

namespace {

const UtilityTable kWide{{"a1", {-16.8, 10.0}}, {"a2", {-5.5, 0.0}}};
const UtilityTable kNarrow{{"a1", {0.0, 10.0}}, {"a2", {-3.0, -1.5}}};

UtilityTable random_table(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    UtilityTable t;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = u(rng), b = u(rng);
        t.push_back({"x" + std::to_string(i), {std::min(a, b), std::max(a, b)}});
    }
    return t;
}

// Regret of a against the best rival, over the corners of the per-act boxes.
double corner_regret(const UtilityTable& t, std::size_t a) {
    double worst = 0.0;
    for (int own = 0; own < 2; ++own)
        for (std::size_t b = 0; b < t.size(); ++b)
            for (int rival = 0; rival < 2; ++rival) {
                if (b == a) continue;
                const double ua = own ? t[a].eu.hi() : t[a].eu.lo();
                const double ub = rival ? t[b].eu.hi() : t[b].eu.lo();
                worst = std::max(worst, ub - ua);
            }
    return worst;
}

} // namespace

TEST_CASE("maximal_set keeps undominated acts", "[ordering]") {
    CHECK(maximal_set(kWide).acts == Names{"a1", "a2"});
    CHECK(maximal_set(kNarrow).acts == Names{"a1"});
    CHECK(maximal_set({{"a", Interval::point(5)}}).acts == Names{"a"});
    CHECK_THROWS_AS(maximal_set({}), InvalidArgument);
}

TEST_CASE("maximin picks the best lower endpoint", "[ordering]") {
    CHECK(maximin(kWide) == "a2");
    CHECK(maximin(kNarrow) == "a1");
    CHECK(maximin({{"p", {1.0, 2.0}}, {"q", {1.0, 9.0}}}) == "p");
}

TEST_CASE("min_regret", "[ordering]") {
    const auto r = regrets(kWide);
    CHECK(r[0] == Approx(16.8));
    CHECK(r[1] == Approx(15.5));
    CHECK(r[0] == Approx(corner_regret(kWide, 0)));
    CHECK(r[1] == Approx(corner_regret(kWide, 1)));
    CHECK(min_regret(kWide) == "a2");
    CHECK(min_regret(kNarrow) == "a1");
    CHECK(min_regret({{"alone", {-3.0, 8.0}}}) == "alone");
    CHECK(regrets({{"alone", {-3.0, 8.0}}})[0] == 0.0);
}

TEST_CASE("min_regret formula agrees with corner enumeration", "[ordering][property]") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const auto t = random_table(rng, 2 + trial % 4);
        const auto r = regrets(t);
        for (std::size_t a = 0; a < t.size(); ++a) CHECK(r[a] == Approx(corner_regret(t, a)).margin(1e-12));
    }
}

TEST_CASE("hurwicz", "[ordering]") {
    CHECK(hurwicz(kWide, 0.0) == maximin(kWide));
    CHECK(hurwicz(kWide, 1.0) == "a1");
    CHECK(hurwicz(kWide, 0.5) == "a2");
    CHECK(0.5 * 10.0 + 0.5 * -16.8 == Approx(-3.4));
    CHECK_THROWS_AS(hurwicz(kWide, 1.5), InvalidArgument);
    CHECK_THROWS_AS(hurwicz(kWide, -0.1), InvalidArgument);
}

TEST_CASE("midpoint_rank", "[ordering]") {
    CHECK(midpoint_rank(kWide) == Names{"a2", "a1"});
    CHECK(midpoint_rank(kNarrow) == Names{"a1", "a2"});
    CHECK(midpoint_rank({{"p", Interval::point(1)}, {"q", Interval::point(1)}, {"r", Interval::point(1)}}) ==
          Names{"p", "q", "r"});
}

TEST_CASE("leximin ignores probabilities", "[ordering]") {
    DecisionProblem berries{"b",
                            {{"a1", {{"G", 10, {}}, {"~G", -30, {}}}}, {"a2", {{"H", -10, {}}, {"~H", 0, {}}}}}};
    CHECK(leximin(berries) == "a2");

    DecisionProblem same{"s", {{"first", {{"x", 1, {}}, {"y", 2, {}}}}, {"second", {{"x", 2, {}}, {"y", 1, {}}}}}};
    CHECK(leximin(same) == "first");

    DecisionProblem uneven{"u", {{"long", {{"x", 4, {}}, {"y", 100, {}}}}, {"short", {{"x", 5, {}}}}}};
    CHECK(leximin(uneven) == "short");

    // Equal prefix: the shorter act is padded with its largest value.
    DecisionProblem prefix{"p", {{"short", {{"x", 3, {}}}}, {"long", {{"x", 3, {}}, {"y", 7, {}}}}}};
    CHECK(leximin(prefix) == "long");
}

TEST_CASE("secondary criteria properties", "[ordering][property]") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = random_table(rng, 2 + trial % 5);
        const auto best = maximal_set(t);
        REQUIRE_FALSE(best.acts.empty());
        CHECK(best.contains(maximin(t)));
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) CHECK(best.contains(hurwicz(t, alpha)));
        CHECK(hurwicz(t, 0.0) == maximin(t));

        if (best.singleton()) {
            const auto kept = restrict_to(t, best);
            CHECK(maximin(kept) == best.acts[0]);
            CHECK(min_regret(kept) == best.acts[0]);
            CHECK(hurwicz(kept, 0.3) == best.acts[0]);
            CHECK(midpoint_rank(kept).front() == best.acts[0]);
        }

        const double c = std::round(shift(rng));
        UtilityTable moved = t;
        for (auto& a : moved) a.eu = scale_add(a.eu, 1.0, c);
        CHECK(maximin(moved) == maximin(t));
        CHECK(min_regret(moved) == min_regret(t));
    }
}

TEST_CASE("secondary_choice applies MEU first", "[ordering]") {
    // c is dominated by a, so the criteria choose between a and b.
    DecisionProblem p{"p",
                      {{"a", {{"x", 0, {}}, {"y", 10, {}}}},
                       {"b", {{"x", -5, {}}, {"y", 20, {}}}},
                       {"c", {{"x", -100, ProbInterval::point(0.5)}, {"y", -99, ProbInterval::point(0.5)}}}}};
    CHECK(secondary_choice(p, Criterion::maximin) == "a");
    CHECK(secondary_choice(p, Criterion::leximin) == "a");
    CHECK(secondary_choice(p, Criterion::hurwicz, 1.0) == "b");
}
