#pragma once

#include <set>
#include <string>
#include <vector>

#include "credal/error.hpp"
#include "credal/interval.hpp"

namespace credal {

/// Slack allowed when checking that probability boxes admit a distribution.
inline constexpr double kFeasibilityTolerance = 1e-9;

struct Outcome {
    std::string label;
    double utility = 0.0;
    ProbInterval prob;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// An act with its exhaustive, mutually exclusive outcome partition.
struct Act {
    std::string name;
    std::vector<Outcome> outcomes;

    const Outcome* find(const std::string& label) const {
        for (const auto& o : outcomes)
            if (o.label == label) return &o;
        return nullptr;
    }

    friend bool operator==(const Act&, const Act&) = default;
};

struct DecisionProblem {
    std::string name;
    std::vector<Act> acts;

    const Act* find(const std::string& act) const {
        for (const auto& a : acts)
            if (a.name == act) return &a;
        return nullptr;
    }

    friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;
};

inline double lower_mass(const Act& act) {
    double s = 0.0;
    for (const auto& o : act.outcomes) s += o.prob.lo();
    return s;
}

inline double upper_mass(const Act& act) {
    double s = 0.0;
    for (const auto& o : act.outcomes) s += o.prob.hi();
    return s;
}

inline bool is_feasible(const Act& act) {
    return lower_mass(act) <= 1.0 + kFeasibilityTolerance &&
           upper_mass(act) >= 1.0 - kFeasibilityTolerance;
}

inline void require_feasible(const Act& act) {
    if (!is_feasible(act)) {
        throw FeasibilityError(act.name, "act '" + act.name +
                                             "': probability box is infeasible (sum of lower bounds " +
                                             std::to_string(lower_mass(act)) + ", sum of upper bounds " +
                                             std::to_string(upper_mass(act)) + ")");
    }
}

/// Structural checks: non-empty acts, unique names and labels. Feasibility is separate.
inline void validate(const DecisionProblem& problem) {
    if (problem.acts.empty())
        throw InvalidArgument("problem '" + problem.name + "' has no acts");
    std::set<std::string> names;
    for (const auto& act : problem.acts) {
        if (!names.insert(act.name).second)
            throw InvalidArgument("duplicate act name '" + act.name + "'");
        if (act.outcomes.empty())
            throw InvalidArgument("act '" + act.name + "' has no outcomes");
        std::set<std::string> labels;
        for (const auto& o : act.outcomes)
            if (!labels.insert(o.label).second)
                throw InvalidArgument("act '" + act.name + "': duplicate outcome '" + o.label + "'");
    }
}

/// Label of the negated event: "G" <-> "~G".
inline std::string negate_label(const std::string& label) {
    if (!label.empty() && label.front() == '~') return label.substr(1);
    return "~" + label;
}

} // namespace credal
