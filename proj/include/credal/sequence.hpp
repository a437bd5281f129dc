#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "credal/acceptance.hpp"
#include "credal/eu.hpp"
#include "credal/ordering.hpp"

namespace credal {

// ---------------------------------------------------------------------------
// Tolerable error
// ---------------------------------------------------------------------------

struct ToleranceSpec {
    enum class Mode { explicit_error, odds_derived };

    Mode mode = Mode::explicit_error;
    double max_error = 1.0;

    static ToleranceSpec explicit_error(double e) {
        if (!(e >= 0.0 && e <= 1.0))
            throw InvalidArgument("tolerance must lie in [0, 1], got " + std::to_string(e));
        return {Mode::explicit_error, e};
    }
    static ToleranceSpec odds_derived() { return {Mode::odds_derived, 0.0}; }

    friend bool operator==(const ToleranceSpec&, const ToleranceSpec&) = default;
};

/// Largest usable error. In odds mode, with g the largest gain and l the
/// largest loss, rho = max(g, l) / min(g, l), w = rho / (rho + 1), and levels
/// with error >= 1 - w are pointless.
inline double tolerable_error(const DecisionProblem& problem, const ToleranceSpec& spec) {
    if (spec.mode == ToleranceSpec::Mode::explicit_error) return spec.max_error;
    double gain = 0.0, loss = 0.0;
    for (const auto& act : problem.acts)
        for (const auto& o : act.outcomes) {
            gain = std::max(gain, o.utility);
            loss = std::max(loss, -o.utility);
        }
    if (gain <= 0.0 || loss <= 0.0)
        throw InvalidArgument("odds-derived tolerance: problem '" + problem.name +
                              "' needs both a positive gain and a positive loss");
    const double rho = std::max(gain, loss) / std::min(gain, loss);
    const double w = rho / (rho + 1.0);
    return 1.0 - w;
}

// ---------------------------------------------------------------------------
// Best-first exploration
// ---------------------------------------------------------------------------

enum class Status { decided, risk_problem, no_mandate };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::decided: return "decided";
    case Status::risk_problem: return "risk-problem";
    case Status::no_mandate: return "no-mandate";
    }
    return "?";
}

struct TraceRow {
    std::size_t index = 0;
    double error = 0.0;
    UtilityTable utilities;
    MaximalSet maximal;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct DecisionReport {
    Status status = Status::no_mandate;
    std::optional<std::string> act;
    std::optional<std::size_t> level;
    std::optional<double> error;
    /// Set when a risk problem's point EUs tie for the maximum.
    bool ambiguous = false;
    double tolerance = 0.0;
    std::vector<TraceRow> trace;

    friend bool operator==(const DecisionReport&, const DecisionReport&) = default;
};

namespace detail {

inline constexpr double kDegenerateTolerance = 1e-12;

// True when the box meets the simplex in a single point: tightened by the
// other outcomes' bounds, every coordinate is pinned.
inline bool single_distribution(const Act& act) {
    const double lo_sum = lower_mass(act);
    const double hi_sum = upper_mass(act);
    for (const auto& o : act.outcomes) {
        const double lo = std::max(o.prob.lo(), 1.0 - (hi_sum - o.prob.hi()));
        const double hi = std::min(o.prob.hi(), 1.0 - (lo_sum - o.prob.lo()));
        if (hi - lo > kDegenerateTolerance) return false;
    }
    return true;
}

} // namespace detail

/// Scans the levels in order and stops at the first one that settles the
/// decision: a single admissible distribution per act (risk problem) or a
/// singleton maximal set. Levels at or past the tolerable error end the scan
/// with no mandate. The sequence is read only.
inline DecisionReport explore(const DecisionProblem& problem, const CredalSequence& seq,
                              const ToleranceSpec& spec) {
    validate(problem);
    seq.validate();
    DecisionReport report;
    report.tolerance = tolerable_error(problem, spec);

    for (const auto& level : seq.levels) {
        if (!(level.error < report.tolerance)) break;
        const DecisionProblem at = apply_level(problem, level);
        TraceRow row{level.index, level.error, eu_all(at), {}};
        row.maximal = maximal_set(row.utilities);
        report.trace.push_back(row);

        const bool point = std::all_of(at.acts.begin(), at.acts.end(),
                                       [](const Act& a) { return detail::single_distribution(a); });
        if (point) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < row.utilities.size(); ++i)
                if (row.utilities[i].eu.midpoint() > row.utilities[best].eu.midpoint()) best = i;
            const double top = row.utilities[best].eu.midpoint();
            report.ambiguous = std::count_if(row.utilities.begin(), row.utilities.end(), [&](const auto& u) {
                                   return u.eu.midpoint() == top;
                               }) > 1;
            report.status = Status::risk_problem;
            report.act = row.utilities[best].act;
            report.level = level.index;
            report.error = level.error;
            return report;
        }
        if (row.maximal.singleton()) {
            report.status = Status::decided;
            report.act = row.maximal.acts.front();
            report.level = level.index;
            report.error = level.error;
            return report;
        }
    }
    report.status = Status::no_mandate;
    return report;
}

// ---------------------------------------------------------------------------
// Higher-order expectation
// ---------------------------------------------------------------------------

/// act name -> outcome label -> probability; one distribution per act.
using PointAssignment = std::map<std::string, std::map<std::string, double>>;

/// act name and a real value, in act declaration order.
using PointUtilities = std::vector<std::pair<std::string, double>>;

struct WeightedMember {
    PointAssignment distribution;
    double weight = 0.0;
};

struct WeightedCredal {
    std::vector<WeightedMember> members;
};

inline constexpr double kWeightTolerance = 1e-9;

namespace detail {

inline double prob_of(const PointAssignment& p, const Act& act, const Outcome& o) {
    auto a = p.find(act.name);
    if (a == p.end()) throw UnknownLabel("assignment misses act '" + act.name + "'");
    auto it = a->second.find(o.label);
    if (it == a->second.end())
        throw UnknownLabel("assignment misses outcome '" + o.label + "' of act '" + act.name + "'");
    return it->second;
}

inline void require_distribution(const PointAssignment& p, const DecisionProblem& problem) {
    for (const auto& act : problem.acts) {
        double total = 0.0;
        for (const auto& o : act.outcomes) {
            const double q = prob_of(p, act, o);
            if (!(q >= 0.0 && q <= 1.0))
                throw InvalidArgument("act '" + act.name + "': probability outside [0, 1]");
            total += q;
        }
        if (std::abs(total - 1.0) > kWeightTolerance)
            throw InvalidArgument("act '" + act.name + "': probabilities sum to " + std::to_string(total));
    }
}

} // namespace detail

/// Point expected utility of every act under one distribution per act.
inline PointUtilities point_eu(const DecisionProblem& problem, const PointAssignment& p) {
    detail::require_distribution(p, problem);
    PointUtilities out;
    for (const auto& act : problem.acts) {
        double s = 0.0;
        for (const auto& o : act.outcomes) s += detail::prob_of(p, act, o) * o.utility;
        out.emplace_back(act.name, s);
    }
    return out;
}

namespace detail {

inline void require_normalized(const WeightedCredal& w) {
    if (w.members.empty()) throw InvalidArgument("weighted credal set is empty");
    double total = 0.0;
    for (const auto& m : w.members) {
        if (!(m.weight >= 0.0)) throw InvalidArgument("weighted credal set: negative weight");
        total += m.weight;
    }
    if (std::abs(total - 1.0) > kWeightTolerance)
        throw InvalidArgument("weighted credal set: weights sum to " + std::to_string(total));
}

} // namespace detail

/// Expected point EU under the higher-order measure over the members.
inline PointUtilities higher_order_eu(const DecisionProblem& problem, const WeightedCredal& w) {
    detail::require_normalized(w);
    PointUtilities out;
    for (const auto& act : problem.acts) out.emplace_back(act.name, 0.0);
    for (const auto& m : w.members) {
        const auto u = point_eu(problem, m.distribution);
        for (std::size_t i = 0; i < u.size(); ++i) out[i].second += m.weight * u[i].second;
    }
    return out;
}

/// The single distribution sum_k M(P_k) P_k.
inline PointAssignment mixture(const WeightedCredal& w) {
    detail::require_normalized(w);
    PointAssignment out;
    for (const auto& m : w.members)
        for (const auto& [act, probs] : m.distribution)
            for (const auto& [label, q] : probs) out[act][label] += m.weight * q;
    return out;
}

// ---------------------------------------------------------------------------
// Starr's criterion
// ---------------------------------------------------------------------------

/// A one-parameter family of point distributions with a uniform prior on the
/// parameter range.
struct ParameterizedCredal {
    double theta_lo = 0.0;
    double theta_hi = 1.0;
    std::size_t resolution = 1000;
    std::function<PointAssignment(double)> mapping;
};

struct StarrResult {
    std::string act;
    /// Share of the parameter range on which each act is EU-optimal.
    PointUtilities measures;
};

/// Picks the act that is EU-optimal on the largest share of the parameter
/// range. Midpoint quadrature; ties at a grid point split its weight.
inline StarrResult starr(const DecisionProblem& problem, const ParameterizedCredal& p) {
    validate(problem);
    if (p.resolution < 100) throw InvalidArgument("starr: grid resolution must be at least 100");
    if (!(p.theta_lo < p.theta_hi)) throw InvalidArgument("starr: empty parameter range");
    if (!p.mapping) throw InvalidArgument("starr: missing parameter mapping");

    const auto n = p.resolution;
    const double step = (p.theta_hi - p.theta_lo) / static_cast<double>(n);
    std::vector<double> measure(problem.acts.size(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = p.theta_lo + (static_cast<double>(k) + 0.5) * step;
        const auto u = point_eu(problem, p.mapping(theta));
        double top = u[0].second;
        for (const auto& [_, v] : u) top = std::max(top, v);
        std::vector<std::size_t> winners;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i].second == top) winners.push_back(i);
        for (auto i : winners) measure[i] += 1.0 / (static_cast<double>(n) * static_cast<double>(winners.size()));
    }

    StarrResult result;
    std::size_t best = 0;
    for (std::size_t i = 0; i < measure.size(); ++i) {
        result.measures.emplace_back(problem.acts[i].name, measure[i]);
        if (measure[i] > measure[best]) best = i;
    }
    result.act = problem.acts[best].name;
    return result;
}

} // namespace credal
