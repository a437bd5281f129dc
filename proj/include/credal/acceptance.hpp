#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "credal/error.hpp"
#include "credal/interval.hpp"
#include "credal/problem.hpp"

namespace credal {

// ---------------------------------------------------------------------------
// Statements and bodies of knowledge
// ---------------------------------------------------------------------------

/// P(event) lies in interval.
struct EventInterval {
    std::string event;
    ProbInterval interval;
    friend bool operator==(const EventInterval&, const EventInterval&) = default;
};

/// The event is accepted as true.
struct Condition {
    std::string event;
    friend bool operator==(const Condition&, const Condition&) = default;
};

/// item belongs to reference_class.
struct ClassMembership {
    std::string item;
    std::string reference_class;
    friend bool operator==(const ClassMembership&, const ClassMembership&) = default;
};

/// Frequency of target within reference_class lies in interval.
struct ClassFrequency {
    std::string reference_class;
    std::string target;
    ProbInterval interval;
    friend bool operator==(const ClassFrequency&, const ClassFrequency&) = default;
};

using StatementContent = std::variant<EventInterval, Condition, ClassMembership, ClassFrequency>;

struct Statement {
    std::string id;
    StatementContent content;
    /// Credence of the statement relative to the initial body of knowledge.
    double prob_given_init = 1.0;

    friend bool operator==(const Statement&, const Statement&) = default;
};

struct BodyOfKnowledge {
    std::size_t index = 0;
    double error = 0.0;
    std::vector<Statement> statements;

    bool contains(const std::string& id) const {
        return std::any_of(statements.begin(), statements.end(),
                           [&](const Statement& s) { return s.id == id; });
    }

    friend bool operator==(const BodyOfKnowledge&, const BodyOfKnowledge&) = default;
};

/// Throws InconsistentKnowledge if the body asserts disjoint intervals for one
/// event or accepts both a condition and its negation.
inline void check_consistent(const BodyOfKnowledge& k) {
    std::map<std::string, const Statement*> intervals;
    std::map<std::string, const Statement*> conditions;
    auto clash = [&](const Statement& a, const Statement& b, const std::string& why) {
        throw InconsistentKnowledge("body K_" + std::to_string(k.index) + ": statements '" + a.id +
                                    "' and '" + b.id + "' " + why);
    };
    for (const auto& s : k.statements) {
        if (s.prob_given_init < 0.0 || s.prob_given_init > 1.0)
            throw InvalidArgument("statement '" + s.id + "': probability outside [0, 1]");
        if (const auto* e = std::get_if<EventInterval>(&s.content)) {
            auto [it, fresh] = intervals.emplace(e->event, &s);
            if (!fresh) {
                const auto& other = std::get<EventInterval>(it->second->content).interval;
                if (other.hi() < e->interval.lo() || e->interval.hi() < other.lo())
                    clash(*it->second, s, "assert disjoint intervals for '" + e->event + "'");
            }
        } else if (const auto* c = std::get_if<Condition>(&s.content)) {
            conditions.emplace(c->event, &s);
            if (auto it = conditions.find(negate_label(c->event)); it != conditions.end())
                clash(*it->second, s, "accept both '" + c->event + "' and its negation");
        }
    }
}

namespace detail {

inline void require_increasing_levels(const std::vector<double>& levels) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] > 0.0 && levels[i] <= 1.0))
            throw InvalidArgument("error level " + std::to_string(levels[i]) + " outside (0, 1]");
        if (i > 0 && !(levels[i] > levels[i - 1]))
            throw InvalidArgument("error levels must be strictly increasing");
    }
}

} // namespace detail

/// Threshold rule: a statement joins K_j when 1 - P(s | K_init) < error_j.
/// Returns K_0 (error 0, empty) followed by one body per error level.
inline std::vector<BodyOfKnowledge> accept_threshold(const std::vector<Statement>& statements,
                                                     const std::vector<double>& error_levels) {
    detail::require_increasing_levels(error_levels);
    std::vector<BodyOfKnowledge> out;
    out.push_back({0, 0.0, {}});
    for (std::size_t j = 0; j < error_levels.size(); ++j) {
        BodyOfKnowledge k{j + 1, error_levels[j], {}};
        for (const auto& s : statements)
            if (1.0 - s.prob_given_init < error_levels[j]) k.statements.push_back(s);
        check_consistent(k);
        out.push_back(std::move(k));
    }
    return out;
}

/// Successor rule: K_{i+1} = K_i plus the next most probable statement. Ties
/// keep declaration order. Error is the running maximum of 1 - P(s | K_init).
inline std::vector<BodyOfKnowledge> accept_next_most_probable(const std::vector<Statement>& init) {
    std::vector<std::size_t> order(init.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return init[a].prob_given_init > init[b].prob_given_init;
    });

    std::vector<BodyOfKnowledge> out;
    out.push_back({0, 0.0, {}});
    for (auto i : order) {
        BodyOfKnowledge next = out.back();
        next.index += 1;
        next.error = std::max(next.error, 1.0 - init[i].prob_given_init);
        next.statements.push_back(init[i]);
        check_consistent(next);
        out.push_back(std::move(next));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reference classes and direct inference
// ---------------------------------------------------------------------------

struct ReferenceClassTable {
    std::vector<ClassFrequency> entries;
    /// Pairs (narrower, broader): the first class is more specific.
    std::vector<std::pair<std::string, std::string>> more_specific;

    /// Transitive closure of more_specific. Throws if it relates a class to itself.
    std::set<std::pair<std::string, std::string>> closure() const {
        std::set<std::string> classes;
        for (const auto& [a, b] : more_specific) {
            classes.insert(a);
            classes.insert(b);
        }
        std::set<std::pair<std::string, std::string>> rel(more_specific.begin(), more_specific.end());
        for (const auto& k : classes)
            for (const auto& i : classes)
                for (const auto& j : classes)
                    if (rel.count({i, k}) && rel.count({k, j})) rel.insert({i, j});
        for (const auto& c : classes)
            if (rel.count({c, c}))
                throw InvalidArgument("reference class specificity is cyclic at '" + c + "'");
        return rel;
    }

    std::optional<ProbInterval> frequency(const std::string& cls, const std::string& target) const {
        std::optional<ProbInterval> found;
        for (const auto& e : entries) {
            if (e.reference_class != cls || e.target != target) continue;
            if (found && !(*found == e.interval))
                throw InconsistentKnowledge("reference class '" + cls + "' has two frequencies for '" +
                                            target + "'");
            found = e.interval;
        }
        return found;
    }

    friend bool operator==(const ReferenceClassTable&, const ReferenceClassTable&) = default;
};

/// Frequency interval of the most specific accepted reference class.
inline ProbInterval direct_inference(const std::string& item, const std::string& target,
                                     const std::set<std::string>& accepted_classes,
                                     const ReferenceClassTable& refs) {
    if (accepted_classes.empty())
        throw InvalidArgument("direct inference for '" + item + "': no accepted reference classes");
    std::map<std::string, ProbInterval> candidates;
    for (const auto& cls : accepted_classes) {
        auto f = refs.frequency(cls, target);
        if (!f)
            throw UnknownLabel("direct inference for '" + item + "': class '" + cls +
                               "' has no frequency for '" + target + "'");
        candidates.emplace(cls, *f);
    }
    const auto spec = refs.closure();
    std::vector<std::string> most_specific;
    for (const auto& [c, _] : candidates) {
        const bool narrower_exists = std::any_of(candidates.begin(), candidates.end(), [&](const auto& d) {
            return spec.count({d.first, c}) > 0;
        });
        if (!narrower_exists) most_specific.push_back(c);
    }
    const ProbInterval result = candidates.at(most_specific.front());
    for (const auto& c : most_specific)
        if (!(candidates.at(c) == result))
            throw AmbiguousReferenceClass("direct inference for '" + item + "' on '" + target +
                                          "': classes '" + most_specific.front() + "' and '" + c +
                                          "' are incomparable and disagree");
    return result;
}

// ---------------------------------------------------------------------------
// Credal levels
// ---------------------------------------------------------------------------

/// act name -> outcome label -> probability box.
using Assignments = std::map<std::string, std::map<std::string, ProbInterval>>;

/// One credal state: per-outcome box overrides with the error of the
/// knowledge it rests on. Outcomes not overridden keep the problem's boxes.
struct CredalLevel {
    std::size_t index = 0;
    double error = 0.0;
    Assignments assignments;

    friend bool operator==(const CredalLevel&, const CredalLevel&) = default;
};

struct CredalSequence {
    std::vector<CredalLevel> levels;

    /// Indices strictly increasing, errors in [0, 1] and non-decreasing.
    /// Nesting of the induced boxes is not required.
    void validate() const {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const auto& l = levels[i];
            if (!(l.error >= 0.0 && l.error <= 1.0))
                throw InvalidArgument("level " + std::to_string(l.index) + ": error outside [0, 1]");
            if (i > 0) {
                if (l.index <= levels[i - 1].index)
                    throw InvalidArgument("level indices must be strictly increasing");
                if (l.error < levels[i - 1].error)
                    throw InvalidArgument("level " + std::to_string(l.index) +
                                          ": error decreases along the sequence");
            }
        }
    }

    friend bool operator==(const CredalSequence&, const CredalSequence&) = default;
};

/// The problem with the level's boxes substituted. Checks feasibility.
inline DecisionProblem apply_level(const DecisionProblem& problem, const CredalLevel& level) {
    DecisionProblem out = problem;
    for (const auto& [act_name, boxes] : level.assignments) {
        auto act = std::find_if(out.acts.begin(), out.acts.end(),
                                [&](const Act& a) { return a.name == act_name; });
        if (act == out.acts.end())
            throw UnknownLabel("level " + std::to_string(level.index) + ": unknown act '" + act_name + "'");
        for (const auto& [label, box] : boxes) {
            auto o = std::find_if(act->outcomes.begin(), act->outcomes.end(),
                                  [&](const Outcome& x) { return x.label == label; });
            if (o == act->outcomes.end())
                throw UnknownLabel("level " + std::to_string(level.index) + ": act '" + act_name +
                                   "' has no outcome '" + label + "'");
            o->prob = box;
        }
    }
    for (const auto& act : out.acts) {
        if (!is_feasible(act))
            throw FeasibilityError(act.name, "level " + std::to_string(level.index) + ": act '" +
                                                 act.name + "' has an infeasible probability box");
    }
    return out;
}

namespace detail {

struct EventOverride {
    ProbInterval box;
    std::string source;
    bool is_condition = false;
};

inline void put_override(std::map<std::string, EventOverride>& into, const std::string& event,
                         EventOverride o, std::size_t level) {
    auto [it, fresh] = into.emplace(event, o);
    if (!fresh && !(it->second.box == o.box)) {
        throw ConflictingOverride("level " + std::to_string(level) + ": '" + it->second.source +
                                  "' and '" + o.source + "' assign different intervals to '" + event + "'");
    }
}

} // namespace detail

/// Reads the statements of K as constraints on the problem's outcome boxes.
///
/// Event intervals and accepted conditions fix the matching outcome in every
/// act (a condition sets it to [1, 1]); in a two-outcome partition the sibling
/// receives the complement unless it is constrained itself. Memberships
/// trigger direct inference for every target event the problem mentions.
/// Labels that match nothing in the problem are ignored.
inline CredalLevel level_from_body(const BodyOfKnowledge& k, const DecisionProblem& problem,
                                   const ReferenceClassTable& refs) {
    check_consistent(k);

    ReferenceClassTable effective = refs;
    std::map<std::string, detail::EventOverride> by_event;
    std::map<std::string, std::set<std::string>> classes_by_item;

    for (const auto& s : k.statements) {
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, EventInterval>) {
                    detail::put_override(by_event, c.event, {c.interval, s.id, false}, k.index);
                } else if constexpr (std::is_same_v<T, Condition>) {
                    detail::put_override(by_event, c.event, {ProbInterval::point(1.0), s.id, true}, k.index);
                } else if constexpr (std::is_same_v<T, ClassMembership>) {
                    classes_by_item[c.item].insert(c.reference_class);
                } else {
                    effective.entries.push_back(c);
                }
            },
            s.content);
    }

    std::set<std::string> labels;
    for (const auto& act : problem.acts)
        for (const auto& o : act.outcomes) labels.insert(o.label);

    for (const auto& [item, classes] : classes_by_item) {
        std::set<std::string> targets;
        for (const auto& e : effective.entries)
            if (classes.count(e.reference_class) && labels.count(e.target)) targets.insert(e.target);
        for (const auto& target : targets) {
            std::set<std::string> relevant;
            for (const auto& cls : classes)
                if (effective.frequency(cls, target)) relevant.insert(cls);
            const auto box = direct_inference(item, target, relevant, effective);
            detail::put_override(by_event, target, {box, "direct inference on " + item, false}, k.index);
        }
    }

    CredalLevel level{k.index, k.error, {}};
    for (const auto& act : problem.acts) {
        std::map<std::string, ProbInterval> boxes;
        for (const auto& o : act.outcomes) {
            auto it = by_event.find(o.label);
            if (it == by_event.end()) continue;
            if (it->second.is_condition && act.outcomes.size() != 2)
                throw InvalidArgument("condition '" + it->second.source + "' on '" + o.label +
                                      "': act '" + act.name + "' is not a two-outcome partition");
            boxes[o.label] = it->second.box;
        }
        if (act.outcomes.size() == 2) {
            const auto& a = act.outcomes[0].label;
            const auto& b = act.outcomes[1].label;
            if (boxes.count(a) && !boxes.count(b)) boxes[b] = boxes[a].complement();
            else if (boxes.count(b) && !boxes.count(a)) boxes[a] = boxes[b].complement();
        }
        if (!boxes.empty()) level.assignments[act.name] = std::move(boxes);
    }
    return level;
}

/// One credal level per body, in body order.
inline CredalSequence levels_from_bodies(const std::vector<BodyOfKnowledge>& bodies,
                                         const DecisionProblem& problem, const ReferenceClassTable& refs) {
    CredalSequence seq;
    for (const auto& k : bodies) seq.levels.push_back(level_from_body(k, problem, refs));
    seq.validate();
    return seq;
}

/// True iff every later level's boxes sit inside every earlier level's boxes.
inline bool is_nested(const CredalSequence& seq, const DecisionProblem& problem) {
    std::vector<DecisionProblem> applied;
    for (const auto& level : seq.levels) applied.push_back(apply_level(problem, level));
    for (std::size_t i = 0; i < applied.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t a = 0; a < problem.acts.size(); ++a)
                for (std::size_t o = 0; o < problem.acts[a].outcomes.size(); ++o)
                    if (!applied[j].acts[a].outcomes[o].prob.contains(applied[i].acts[a].outcomes[o].prob))
                        return false;
    return true;
}

} // namespace credal
