#pragma once

// End-to-end runs of the four Jerry's Berries scenarios against their
// reference figures. Where a reference figure cannot be reproduced from its
// own inputs, the engine value is asserted and the gap is reported as a note.

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "credal/credal.hpp"
#include "credal/io.hpp"
#include "embedded_fixtures.hpp"

namespace credal::replicate {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Replication {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

inline constexpr double kTol = 1e-9;

inline std::string fmt(double x, int digits = 4) {
    std::ostringstream os;
    if (x == 0.0 || std::abs(x) < 0.5 * std::pow(10.0, -digits)) x = 0.0;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

inline std::string fmt(const Interval& i, int digits = 4) {
    return "[" + fmt(i.lo(), digits) + ", " + fmt(i.hi(), digits) + "]";
}

inline std::string fmt(const ProbInterval& p, int digits = 4) { return fmt(p.as_interval(), digits); }

inline std::string fmt(const std::vector<std::string>& names) {
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
    return s + "}";
}

inline bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }
inline bool near(const Interval& i, double lo, double hi, double tol = kTol) {
    return near(i.lo(), lo, tol) && near(i.hi(), hi, tol);
}

inline const Interval& eu_of(const UtilityTable& t, const std::string& act) {
    for (const auto& a : t)
        if (a.act == act) return a.eu;
    throw UnknownLabel("no act '" + act + "' in utility table");
}

class Recorder {
public:
    explicit Recorder(std::string title) { r_.title = std::move(title); }
    void check(std::string name, bool ok, std::string detail = {}) {
        r_.checks.push_back({std::move(name), ok, std::move(detail)});
    }
    void note(std::string n) { r_.notes.push_back(std::move(n)); }
    Replication done() { return std::move(r_); }

private:
    Replication r_;
};

/// Confidence intervals feeding the problem: the reference intervals are used as inputs.
inline Replication example_a() {
    Recorder rec("A: lower-level confidence intervals");
    const auto file = parse_problem_file(fixtures::example_a);
    const auto seq = build_sequence(file);
    const auto& p = file.problem;

    const auto eu99 = eu_all(apply_level(p, seq.levels.at(0)));
    const auto eu75 = eu_all(apply_level(p, seq.levels.at(1)));
    const auto& a1_99 = eu_of(eu99, "a1");
    rec.check(".99: u(a1) = [-16, 10] from P(G) = [.35, 1]", near(a1_99, -16.0, 10.0), fmt(a1_99));
    rec.note("reference u(a1) at .99 is [-16.8, 10]; .35*10 + .65*(-30) = -16.0 (-16.8 corresponds to P(G) = .33)");
    rec.check(".99: u(a2) = [-5.5, 0]", near(eu_of(eu99, "a2"), -5.5, 0.0), fmt(eu_of(eu99, "a2")));
    const auto max99 = maximal_set(eu99);
    rec.check(".99: maximal set {a1, a2}", max99.acts == std::vector<std::string>{"a1", "a2"}, fmt(max99.acts));

    rec.check(".75: u(a1) = [0, 10]", near(eu_of(eu75, "a1"), 0.0, 10.0), fmt(eu_of(eu75, "a1")));
    rec.check(".75: u(a2) = [-3, -1.5]", near(eu_of(eu75, "a2"), -3.0, -1.5), fmt(eu_of(eu75, "a2")));
    const auto max75 = maximal_set(eu75);
    rec.check(".75: a1 uniquely maximal", max75.acts == std::vector<std::string>{"a1"}, fmt(max75.acts));

    const auto report = explore(p, seq, *file.tolerance);
    rec.check("explore: decided a1 at level 2",
              report.status == Status::decided && report.act == "a1" && report.level == 2u,
              std::string(to_string(report.status)) + " " + report.act.value_or("-"));

    const UtilityTable reference{{"a1", Interval(-16.8, 10.0)}, {"a2", eu_of(eu99, "a2")}};
    rec.check("midpoints with reference -16.8: mp1 = -3.4, mp2 = -2.75",
              near(reference[0].eu.midpoint(), -3.4) && near(reference[1].eu.midpoint(), -2.75),
              fmt(reference[0].eu.midpoint()) + ", " + fmt(reference[1].eu.midpoint()));
    rec.check("midpoint ranking reverses dominance: a2 first", midpoint_rank(reference).front() == "a2" &&
                                                                   midpoint_rank(eu99).front() == "a2");

    const auto cp = [](std::uint64_t x, std::uint64_t n, double c, Tails t) {
        return fmt(clopper_pearson({x, n}, c, t));
    };
    rec.note("Clopper-Pearson 4/4 @ .99: two-sided " + cp(4, 4, .99, Tails::two_sided) + ", one-sided " +
             cp(4, 4, .99, Tails::one_sided) + "; reference [.35, 1]");
    rec.note("Clopper-Pearson 3/14 @ .99: two-sided " + cp(3, 14, .99, Tails::two_sided) + ", one-sided " +
             cp(3, 14, .99, Tails::one_sided) + "; reference [0, .55]");
    rec.note("Clopper-Pearson 4/4 @ .75: two-sided " + cp(4, 4, .75, Tails::two_sided) + ", one-sided " +
             cp(4, 4, .75, Tails::one_sided) + "; reference [.75, 1]");
    rec.note("Clopper-Pearson 3/14 @ .75: two-sided " + cp(3, 14, .75, Tails::two_sided) + ", one-sided " +
             cp(3, 14, .75, Tails::one_sided) + "; reference [.15, .3]");
    return rec.done();
}

/// Direct inference picks the soft-berry class once membership is accepted.
inline Replication example_b() {
    Recorder rec("B: direct inference and probabilistic acceptance");
    const auto file = parse_problem_file(fixtures::example_b);
    const auto& refs = file.references;

    const auto broad = direct_inference("this-berry", "G", {"berries"}, refs);
    rec.check("berries alone: P(G) = [.3, .8]", broad == ProbInterval(0.3, 0.8), fmt(broad));
    const auto narrow = direct_inference("this-berry", "G", {"berries", "soft-berries"}, refs);
    rec.check("soft berries accepted: P(G) = [.84, .88]", narrow == ProbInterval(0.84, 0.88), fmt(narrow));

    const auto bodies = accept_threshold(file.knowledge->statements, file.knowledge->error_levels);
    rec.check("membership at .999 absent at error .0005, present at .005",
              !bodies.at(1).contains("berry-in-soft-berries") && bodies.at(2).contains("berry-in-soft-berries"));

    const auto seq = build_sequence(file);
    const auto eu1 = eu_all(apply_level(file.problem, seq.levels.at(1)));
    rec.check("on [.3, .8] both acts maximal", maximal_set(eu1).acts.size() == 2, fmt(maximal_set(eu1).acts));
    const auto eu2 = eu_all(apply_level(file.problem, seq.levels.at(2)));
    rec.check("u(a1) = [3.6, 5.2]", near(eu_of(eu2, "a1"), 3.6, 5.2), fmt(eu_of(eu2, "a1")));

    const auto report = explore(file.problem, seq, *file.tolerance);
    rec.check("explore: decided a1 by dominance", report.status == Status::decided && report.act == "a1",
              std::string(to_string(report.status)) + " " + report.act.value_or("-"));
    return rec.done();
}

/// Non-nested levels from conditionalization; the same levels serve a second problem.
inline Replication example_c() {
    Recorder rec("C: convex Bayesian vs. Savage's Bayesian");
    const auto berry = parse_problem_file(fixtures::example_c);
    const auto lottery = parse_problem_file(fixtures::example_c_lottery);
    rec.check("berry and lottery files share one level list", berry.levels == lottery.levels);

    std::vector<BodyOfKnowledge> bodies;
    for (const auto& l : berry.levels) bodies.push_back({l.index, l.error, l.statements});
    const auto berry_seq = levels_from_bodies(bodies, berry.problem, berry.references);
    const auto lottery_seq = levels_from_bodies(bodies, lottery.problem, lottery.references);
    const auto before = to_json(berry_seq).dump();

    const auto eu1 = eu_all(apply_level(berry.problem, berry_seq.levels.at(1)));
    rec.check("Pi_1: u(a1) = [-6, 2]", near(eu_of(eu1, "a1"), -6.0, 2.0), fmt(eu_of(eu1, "a1")));
    rec.check("Pi_1: maximal set {a1, a2}", maximal_set(eu1).acts == std::vector<std::string>{"a1", "a2"},
              fmt(maximal_set(eu1).acts));
    const auto eu2 = eu_all(apply_level(berry.problem, berry_seq.levels.at(2)));
    rec.check("Pi_2: u(a1) = [-18, -14]", near(eu_of(eu2, "a1"), -18.0, -14.0), fmt(eu_of(eu2, "a1")));

    const auto tol = *berry.tolerance;
    const auto r_berry = explore(berry.problem, berry_seq, tol);
    rec.check("berry: decided a2 at Pi_2",
              r_berry.status == Status::decided && r_berry.act == "a2" && r_berry.level == 2u,
              std::string(to_string(r_berry.status)) + " " + r_berry.act.value_or("-"));
    const auto r_lottery = explore(lottery.problem, lottery_seq, tol);
    rec.check("lottery: decided enter at Pi_1",
              r_lottery.status == Status::decided && r_lottery.act == "enter" && r_lottery.level == 1u,
              std::string(to_string(r_lottery.status)) + " " + r_lottery.act.value_or("-"));
    rec.check("levels are not nested", !is_nested(berry_seq, berry.problem));
    rec.check("sequence unchanged by the decisions", to_json(berry_seq).dump() == before);
    return rec.done();
}

/// Jerry's Berries with ~H accepted and P(G) fixed at p.
inline DecisionReport decide_with_point_belief(const DecisionProblem& problem, double p) {
    const BodyOfKnowledge k{1, 0.0,
                            {{"not-hungry", Condition{"~H"}, 1.0},
                             {"combined-belief", EventInterval{"G", ProbInterval::point(p)}, 1.0}}};
    CredalSequence seq{{level_from_body(k, problem, {})}};
    return explore(problem, seq, ToleranceSpec::explicit_error(1.0));
}

/// Shafer discounting of the second source and the resulting switch point.
inline Replication example_d() {
    Recorder rec("D: Shaferian discounting");
    const auto file = parse_problem_file(fixtures::example_d);
    const std::vector<std::string> frame{"G", "~G"};
    const MassFunction m1(frame, {{0b01, 0.7}, {0b10, 0.3}});
    const MassFunction m2(frame, {{0b01, 0.6}, {0b10, 0.4}});
    const FocalSet g = m1.subset({"G"});

    const auto combined = bel_pl_interval(dempster_combine(m1, m2), g);
    rec.check("undiscounted P(G) = .42/.54", near(combined.lo(), 0.42 / 0.54) && combined.degenerate(),
              fmt(combined, 6));

    const double r_star = discount_threshold(m1, m2, g, 0.75);
    rec.check("threshold r* = 3/13", near(r_star, 3.0 / 13.0, 1e-6), fmt(r_star, 6));

    bool determinate = true;
    for (double r = 0.0; r <= 1.0; r += 0.125)
        determinate = determinate && bel_pl_interval(dempster_combine(m1, discount(m2, r)), g).degenerate();
    rec.check("P(G) determinate for every r", determinate);

    const auto at = [&](double r) {
        const double p = bel_pl_interval(dempster_combine(m1, discount(m2, r)), g).lo();
        return decide_with_point_belief(file.problem, p);
    };
    const auto low = at(0.2);
    const auto high = at(0.25);
    rec.check("r = .20 mandates a1", low.act == "a1" && low.status != Status::no_mandate,
              std::string(to_string(low.status)) + " " + low.act.value_or("-"));
    rec.check("r = .25 mandates a2", high.act == "a2" && high.status != Status::no_mandate,
              std::string(to_string(high.status)) + " " + high.act.value_or("-"));
    return rec.done();
}

inline Replication run(char example) {
    switch (example) {
    case 'A': return example_a();
    case 'B': return example_b();
    case 'C': return example_c();
    case 'D': return example_d();
    }
    throw InvalidArgument(std::string("unknown example '") + example + "', expected A, B, C or D");
}

} // namespace credal::replicate
