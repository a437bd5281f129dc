// Acceptance suite: one pass/fail line per criterion. Tolerances are fixed
// below. `acceptance --only <id>` runs a single criterion; the exit status is
// nonzero if any selected criterion fails.

#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "credal/credal.hpp"
#include "credal/io.hpp"
#include "embedded_fixtures.hpp"
#include "oracles.hpp"

using namespace credal;

namespace {

constexpr double kExact = 1e-9;
constexpr double kThreshold = 1e-6;
constexpr double kClosedForm = 1e-8;
constexpr double kMinCoverage = 0.94;

struct Result {
    bool passed = true;
    std::vector<std::string> failures;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            failures.push_back(what);
        }
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool near(const Interval& i, double lo, double hi, double tol) { return near(i.lo(), lo, tol) && near(i.hi(), hi, tol); }

const Interval& eu_of(const UtilityTable& t, const std::string& act) {
    for (const auto& a : t)
        if (a.act == act) return a.eu;
    throw UnknownLabel(act);
}

void example_a(Result& o) {
    const auto f = parse_problem_file(fixtures::example_a);
    const auto seq = build_sequence(f);
    const auto eu99 = eu_all(apply_level(f.problem, seq.levels.at(0)));
    const auto eu75 = eu_all(apply_level(f.problem, seq.levels.at(1)));
    o.require(near(eu_of(eu99, "a2"), -5.5, 0.0, kExact), ".99 u(a2) = [-5.5, 0]");
    o.require(near(eu_of(eu99, "a1"), -16.0, 10.0, kExact), ".99 u(a1) = [-16, 10] from its inputs");
    o.require(near(eu_of(eu75, "a1"), 0.0, 10.0, kExact), ".75 u(a1) = [0, 10]");
    o.require(near(eu_of(eu75, "a2"), -3.0, -1.5, kExact), ".75 u(a2) = [-3, -1.5]");
    o.require(maximal_set(eu99).acts == std::vector<std::string>{"a1", "a2"}, ".99 maximal {a1, a2}");
    o.require(maximal_set(eu75).acts == std::vector<std::string>{"a1"}, ".75 maximal {a1}");
    const Interval reference(-16.8, 10.0);
    o.require(near(reference.midpoint(), -3.4, kExact), "midpoint -3.4 with -16.8");
    o.require(near(eu_of(eu99, "a2").midpoint(), -2.75, kExact), "midpoint -2.75");
    o.detail << "u(a1)@.99 = [" << eu_of(eu99, "a1").lo() << ", 10]; reference -16.8 flagged";
}

void example_b(Result& o) {
    const auto f = parse_problem_file(fixtures::example_b);
    const auto di = direct_inference("this-berry", "G", {"berries", "soft-berries"}, f.references);
    o.require(di == ProbInterval(0.84, 0.88), "direct inference [.84, .88]");
    const auto seq = build_sequence(f);
    const auto eu = eu_all(apply_level(f.problem, seq.levels.back()));
    o.require(near(eu_of(eu, "a1"), 3.6, 5.2, kExact), "eu(a1) = [3.6, 5.2]");
    const auto r = explore(f.problem, seq, *f.tolerance);
    o.require(r.status == Status::decided && r.act == "a1", "Decided(a1)");
}

void example_c(Result& o) {
    const auto berry = parse_problem_file(fixtures::example_c);
    const auto lottery = parse_problem_file(fixtures::example_c_lottery);
    const auto seq = build_sequence(berry);
    const auto eu1 = eu_all(apply_level(berry.problem, seq.levels.at(1)));
    const auto eu2 = eu_all(apply_level(berry.problem, seq.levels.at(2)));
    o.require(near(eu_of(eu1, "a1"), -6.0, 2.0, kExact), "Pi_1 u(a1) = [-6, 2]");
    o.require(maximal_set(eu1).acts == std::vector<std::string>{"a1", "a2"}, "Pi_1 maximal {a1, a2}");
    o.require(near(eu_of(eu2, "a1"), -18.0, -14.0, kExact), "Pi_2 u(a1) = [-18, -14]");
    const auto r = explore(berry.problem, seq, *berry.tolerance);
    o.require(r.status == Status::decided && r.act == "a2" && r.level == 2u, "Decided(a2) at Pi_2");
    const auto l = explore(lottery.problem, build_sequence(lottery), *lottery.tolerance);
    o.require(l.status == Status::decided && l.act == "enter" && l.level == 1u, "lottery Decided(enter) at Pi_1");
    o.require(!is_nested(seq, berry.problem), "is_nested false");
}

DecisionReport decide_at(const DecisionProblem& p, double g) {
    const BodyOfKnowledge k{1, 0.0, {{"nh", Condition{"~H"}, 1.0}, {"g", EventInterval{"G", ProbInterval::point(g)}, 1.0}}};
    return explore(p, CredalSequence{{level_from_body(k, p, {})}}, ToleranceSpec::explicit_error(1.0));
}

void example_d(Result& o) {
    const std::vector<std::string> frame{"G", "~G"};
    const MassFunction m1(frame, {{0b01, 0.7}, {0b10, 0.3}});
    const MassFunction m2(frame, {{0b01, 0.6}, {0b10, 0.4}});
    const double combined = bel_pl_interval(dempster_combine(m1, m2), 0b01).lo();
    o.require(near(combined, 0.42 / 0.54, kExact), "P(G) = .42/.54");
    const double r = discount_threshold(m1, m2, 0b01, 0.75);
    o.require(near(r, 3.0 / 13.0, kThreshold), "r* = 3/13");
    const auto p = parse_problem_file(fixtures::example_d).problem;
    const auto pg = [&](double rate) { return bel_pl_interval(dempster_combine(m1, discount(m2, rate)), 0b01).lo(); };
    const auto lo = decide_at(p, pg(0.2));
    const auto hi = decide_at(p, pg(0.25));
    o.require(lo.status != Status::no_mandate && lo.act == "a1", "a1 at r = .2");
    o.require(hi.status != Status::no_mandate && hi.act == "a2", "a2 at r = .25");
    o.detail << "r* = " << r;
}

void tolerance(Result& o) {
    const DecisionProblem bet{"bet", {{"a", {{"win", 20, {}}, {"lose", -1, {}}}}}};
    const double w = 1.0 - tolerable_error(bet, ToleranceSpec::odds_derived());
    o.require(near(w, 20.0 / 21.0, kExact), "w(20:1) = 20/21");
    const auto f = parse_problem_file(fixtures::example_a);
    const auto r = explore(f.problem, build_sequence(f), ToleranceSpec::explicit_error(0.04));
    o.require(r.status == Status::no_mandate, "tolerance .04 gives NoMandate");
}

void oracle_equivalence(Result& o) {
    std::mt19937_64 rng(20240611);
    double worst = 0.0;
    std::size_t escapes = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto act = oracle::random_act(rng, 2, 5);
        const auto eu = eu_interval(act);
        const auto lp = oracle::vertex_eu(act);
        worst = std::max({worst, std::abs(eu.lo() - lp.lo()), std::abs(eu.hi() - lp.hi())});
        for (int s = 0; s < 100; ++s) {
            const double u = oracle::dot(act, oracle::random_feasible(act, rng));
            if (u < eu.lo() - kExact || u > eu.hi() + kExact) ++escapes;
        }
    }
    o.require(worst <= kExact, "greedy matches vertex LP");
    o.require(escapes == 0, "samples inside bounds");
    o.detail << "max LP gap " << worst << ", samples outside " << escapes;
}

void clopper_pearson_criterion(Result& o) {
    double worst = 0.0;
    for (std::uint64_t n : {1u, 5u, 14u, 20u, 100u})
        for (double conf : {0.75, 0.9, 0.95, 0.99}) {
            const double tail = (1.0 - conf) / 2.0;
            worst = std::max(worst, std::abs(clopper_pearson({n, n}, conf).lo() - oracle::cp_lower_all_successes(n, tail)));
            worst = std::max(worst, std::abs(clopper_pearson({0, n}, conf).hi() - oracle::cp_upper_no_successes(n, tail)));
        }
    o.require(worst <= kClosedForm, "closed forms");

    constexpr std::uint64_t n = 20;
    std::vector<ProbInterval> table;
    for (std::uint64_t x = 0; x <= n; ++x) table.push_back(clopper_pearson({x, n}, 0.95));
    std::mt19937_64 rng(7);
    double min_cov = 1.0;
    for (double p : {0.1, 0.3, 0.5, 0.8}) {
        std::binomial_distribution<std::uint64_t> bin(n, p);
        int hits = 0;
        for (int s = 0; s < 10000; ++s) hits += table[bin(rng)].contains(p);
        min_cov = std::min(min_cov, hits / 10000.0);
    }
    o.require(min_cov >= kMinCoverage, "coverage >= .94");

    const double upper = clopper_pearson({3, 14}, 0.99).hi();
    o.require(upper >= 0.54 && upper <= 0.56, "3/14 @ .99 upper in [.54, .56]");
    o.detail << "closed-form gap " << worst << ", min coverage " << min_cov << ", 3/14 @ .99 upper " << upper;
}

template <typename Rng>
MassFunction random_binary(Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a = u(rng), b = u(rng), c = u(rng) + 0.05;
    const double t = a + b + c;
    return MassFunction({"G", "~G"}, {{0b01, a / t}, {0b10, b / t}, {0b11, c / t}});
}

void dempster_shafer(Result& o) {
    std::mt19937_64 rng(500);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool comm = true, assoc = true, ident = true, bayes = true;
    for (int i = 0; i < 500; ++i) {
        const auto a = random_binary(rng), b = random_binary(rng), c = random_binary(rng);
        comm = comm && approx_equal(dempster_combine(a, b), dempster_combine(b, a), kExact);
        assoc = assoc && approx_equal(dempster_combine(dempster_combine(a, b), c),
                                      dempster_combine(a, dempster_combine(b, c)), kExact);
        ident = ident && dempster_combine(a, MassFunction::vacuous(a.frame())) == a;
        const double g = 0.01 + 0.98 * u(rng);
        const MassFunction p({"G", "~G"}, {{0b01, g}, {0b10, 1.0 - g}});
        bayes = bayes && dempster_combine(p, a).is_bayesian();
    }
    o.require(comm, "commutativity");
    o.require(assoc, "associativity");
    o.require(ident, "vacuous identity");
    o.require(bayes, "Bayesian absorption");
}

void purity(Result& o) {
    const auto berry = parse_problem_file(fixtures::example_c);
    const auto lottery = parse_problem_file(fixtures::example_c_lottery);
    const auto berry_seq = build_sequence(berry);
    const auto lottery_seq = build_sequence(lottery);
    const auto before = to_json(berry_seq).dump() + to_json(lottery_seq).dump();
    const auto tol = *berry.tolerance;
    const auto first_berry = to_json(explore(berry.problem, berry_seq, tol)).dump();
    const auto first_lottery = to_json(explore(lottery.problem, lottery_seq, tol)).dump();
    bool same = true;
    for (int i = 0; i < 100; ++i) {
        if (i % 2) same = same && to_json(explore(lottery.problem, lottery_seq, tol)).dump() == first_lottery;
        else same = same && to_json(explore(berry.problem, berry_seq, tol)).dump() == first_berry;
    }
    o.require(to_json(berry_seq).dump() + to_json(lottery_seq).dump() == before, "sequence byte-identical");
    o.require(same, "repeated runs identical");
}

void higher_order(Result& o) {
    std::mt19937_64 rng(200);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> util(-50.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        DecisionProblem p{"random", {}};
        for (int a = 0; a < 3; ++a) {
            Act act{"a" + std::to_string(a), {}};
            for (int k = 0; k < 3; ++k) act.outcomes.push_back({"e" + std::to_string(k), util(rng), {}});
            p.acts.push_back(act);
        }
        WeightedCredal w;
        double total = 0.0;
        for (int m = 0; m < 1 + i % 5; ++m) {
            PointAssignment d;
            for (const auto& act : p.acts) {
                double s = 0.0;
                std::vector<double> x;
                for (std::size_t k = 0; k < act.outcomes.size(); ++k) s += x.emplace_back(u(rng) + 1e-3);
                for (std::size_t k = 0; k < x.size(); ++k) d[act.name][act.outcomes[k].label] = x[k] / s;
            }
            const double wt = u(rng) + 1e-3;
            total += wt;
            w.members.push_back({d, wt});
        }
        for (auto& m : w.members) m.weight /= total;
        const auto ho = higher_order_eu(p, w);
        const auto mx = point_eu(p, mixture(w));
        for (std::size_t k = 0; k < ho.size(); ++k) worst = std::max(worst, std::abs(ho[k].second - mx[k].second));
    }
    o.require(worst <= kExact, "higher-order EU equals mixture EU");
    o.detail << "max gap " << worst;
}

void starr_criterion(Result& o) {
    const auto p = parse_problem_file(fixtures::example_d).problem;
    constexpr std::size_t resolution = 1000;
    const auto r = starr(p, {0.3, 0.8, resolution, [](double g) {
                                 return PointAssignment{{"a1", {{"G", g}, {"~G", 1.0 - g}}}, {"a2", {{"H", 0.0}, {"~H", 1.0}}}};
                             }});
    const double tol = 2.0 / resolution;
    o.require(r.act == "a2", "chooses a2");
    o.require(near(r.measures[0].second, 0.1, tol) && near(r.measures[1].second, 0.9, tol), "measures (.1, .9)");
    o.detail << "measures " << r.measures[0].second << ", " << r.measures[1].second;
}

struct Criterion {
    const char* id;
    const char* title;
    std::function<void(Result&)> run;
};

const std::vector<Criterion> kCriteria{
    {"example-a", "Example A: confidence-interval levels", example_a},
    {"example-b", "Example B: direct inference", example_b},
    {"example-c", "Example C: non-nested conditionalization", example_c},
    {"example-d", "Example D: discounting threshold", example_d},
    {"tolerance", "Tolerable error", tolerance},
    {"oracle", "EU bounds against vertex LP and sampling", oracle_equivalence},
    {"clopper-pearson", "Clopper-Pearson intervals", clopper_pearson_criterion},
    {"dempster-shafer", "Dempster-Shafer algebra", dempster_shafer},
    {"purity", "Engine purity", purity},
    {"higher-order", "Higher-order linearity", higher_order},
    {"starr", "Starr's criterion", starr_criterion},
};

} // namespace

int main(int argc, char** argv) {
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = argv[++i];
        else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : kCriteria) std::cout << c.id << '\n';
            return 0;
        } else {
            std::cerr << "usage: acceptance [--only <id>] [--list]\n";
            return 1;
        }
    }
    int failed = 0, ran = 0;
    std::cout.precision(10);
    for (const auto& c : kCriteria) {
        if (!only.empty() && only != c.id) continue;
        ++ran;
        Result o;
        o.detail.precision(10);
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.title;
        if (!o.detail.str().empty()) std::cout << " (" << o.detail.str() << ")";
        for (const auto& f : o.failures) std::cout << "\n       failed: " << f;
        std::cout << '\n';
        failed += !o.passed;
    }
    if (ran == 0) {
        std::cerr << "no criterion named '" << only << "'\n";
        return 1;
    }
    std::cout << (ran - failed) << "/" << ran << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
