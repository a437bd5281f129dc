#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "credal/interval.hpp"
#include "credal/problem.hpp"

namespace credal {

/// Interval expected utility together with the distributions attaining each end.
struct EuBounds {
    Interval value;
    std::vector<double> argmin;
    std::vector<double> argmax;
};

namespace detail {

// Start at the lower bounds and pour the residual mass into outcomes in
// utility order (ascending for the infimum), capping each at its upper bound.
// Equal utilities keep list order.
inline std::vector<double> greedy_fill(const Act& act, bool ascending) {
    const auto n = act.outcomes.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ascending ? act.outcomes[a].utility < act.outcomes[b].utility
                         : act.outcomes[a].utility > act.outcomes[b].utility;
    });

    std::vector<double> p(n);
    double residual = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = act.outcomes[i].prob.lo();
        residual -= p[i];
    }
    for (auto i : order) {
        if (residual <= 0.0) break;
        const double room = act.outcomes[i].prob.hi() - p[i];
        const double add = std::min(room, residual);
        p[i] += add;
        residual -= add;
    }
    return p;
}

} // namespace detail

/// Sum of p_i * u_i in outcome order.
inline double point_eu(const Act& act, std::span<const double> probs) {
    double s = 0.0;
    for (std::size_t i = 0; i < act.outcomes.size(); ++i) s += probs[i] * act.outcomes[i].utility;
    return s;
}

/// Exact inf/sup of expected utility over the act's probability box intersected
/// with the simplex.
inline EuBounds eu_bounds(const Act& act) {
    if (act.outcomes.empty())
        throw InvalidArgument("act '" + act.name + "' has no outcomes");
    require_feasible(act);
    auto lo = detail::greedy_fill(act, true);
    auto hi = detail::greedy_fill(act, false);
    const double a = point_eu(act, lo);
    const double b = point_eu(act, hi);
    // Float summation can leave a ~1e-16 inversion when the box is a point.
    return {Interval{std::min(a, b), std::max(a, b)}, std::move(lo), std::move(hi)};
}

inline Interval eu_interval(const Act& act) { return eu_bounds(act).value; }

struct ActUtility {
    std::string act;
    Interval eu;

    friend bool operator==(const ActUtility&, const ActUtility&) = default;
};

/// Per-act utility intervals in act declaration order.
using UtilityTable = std::vector<ActUtility>;

inline UtilityTable eu_all(const DecisionProblem& problem) {
    UtilityTable table;
    table.reserve(problem.acts.size());
    for (const auto& act : problem.acts) table.push_back({act.name, eu_interval(act)});
    return table;
}

} // namespace credal
