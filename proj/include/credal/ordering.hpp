#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "credal/eu.hpp"

namespace credal {

/// Acts left undominated, in act declaration order.
struct MaximalSet {
    std::vector<std::string> acts;
    std::string by = "dominance";

    bool singleton() const noexcept { return acts.size() == 1; }
    bool contains(const std::string& act) const {
        return std::find(acts.begin(), acts.end(), act) != acts.end();
    }

    friend bool operator==(const MaximalSet&, const MaximalSet&) = default;
};

namespace detail {

inline void require_non_empty(const UtilityTable& eu, const char* who) {
    if (eu.empty()) throw InvalidArgument(std::string(who) + ": empty act set");
}

// First index maximizing score; strict > keeps the earliest on ties.
template <typename Score>
std::size_t argmax_first(const UtilityTable& eu, Score score) {
    std::size_t best = 0;
    double best_score = score(eu[0]);
    for (std::size_t i = 1; i < eu.size(); ++i) {
        const double s = score(eu[i]);
        if (s > best_score) {
            best = i;
            best_score = s;
        }
    }
    return best;
}

} // namespace detail

inline MaximalSet maximal_set(const UtilityTable& eu) {
    detail::require_non_empty(eu, "maximal_set");
    MaximalSet out;
    for (const auto& a : eu) {
        const bool beaten = std::any_of(eu.begin(), eu.end(),
                                        [&](const ActUtility& b) { return dominates(b.eu, a.eu); });
        if (!beaten) out.acts.push_back(a.act);
    }
    return out;
}

inline std::string maximin(const UtilityTable& eu) {
    detail::require_non_empty(eu, "maximin");
    return eu[detail::argmax_first(eu, [](const ActUtility& a) { return a.eu.lo(); })].act;
}

/// Worst-case regret per act, assuming independent per-act boxes.
inline std::vector<double> regrets(const UtilityTable& eu) {
    std::vector<double> out(eu.size(), 0.0);
    for (std::size_t a = 0; a < eu.size(); ++a) {
        double r = 0.0;
        for (std::size_t b = 0; b < eu.size(); ++b)
            if (b != a) r = std::max(r, eu[b].eu.hi() - eu[a].eu.lo());
        out[a] = r;
    }
    return out;
}

inline std::string min_regret(const UtilityTable& eu) {
    detail::require_non_empty(eu, "min_regret");
    const auto r = regrets(eu);
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] < r[best]) best = i;
    return eu[best].act;
}

/// Optimism-pessimism index alpha*hi + (1-alpha)*lo.
inline std::string hurwicz(const UtilityTable& eu, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw InvalidArgument("hurwicz: alpha must lie in [0, 1], got " + std::to_string(alpha));
    detail::require_non_empty(eu, "hurwicz");
    return eu[detail::argmax_first(eu, [alpha](const ActUtility& a) {
               return alpha * a.eu.hi() + (1.0 - alpha) * a.eu.lo();
           })].act;
}

/// Acts by descending utility midpoint, stable on ties.
inline std::vector<std::string> midpoint_rank(const UtilityTable& eu) {
    detail::require_non_empty(eu, "midpoint_rank");
    std::vector<std::size_t> order(eu.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return eu[a].eu.midpoint() > eu[b].eu.midpoint();
    });
    std::vector<std::string> out;
    for (auto i : order) out.push_back(eu[i].act);
    return out;
}

namespace detail {

// Negative if a is worse than b, positive if better, 0 on a tie.
// A shorter vector is padded with its own largest value.
inline int leximin_compare(const std::vector<double>& a, const std::vector<double>& b) {
    const auto n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a[std::min(i, a.size() - 1)];
        const double y = b[std::min(i, b.size() - 1)];
        if (x < y) return -1;
        if (x > y) return 1;
    }
    return 0;
}

} // namespace detail

/// Lexicographic maximin over sorted outcome utilities. Ignores probabilities.
inline std::string leximin(const DecisionProblem& problem) {
    validate(problem);
    auto sorted = [](const Act& act) {
        std::vector<double> u;
        for (const auto& o : act.outcomes) u.push_back(o.utility);
        std::sort(u.begin(), u.end());
        return u;
    };
    std::size_t best = 0;
    auto best_u = sorted(problem.acts[0]);
    for (std::size_t i = 1; i < problem.acts.size(); ++i) {
        auto u = sorted(problem.acts[i]);
        if (detail::leximin_compare(u, best_u) > 0) {
            best = i;
            best_u = std::move(u);
        }
    }
    return problem.acts[best].name;
}

/// Rows of eu whose act is in the maximal set.
inline UtilityTable restrict_to(const UtilityTable& eu, const MaximalSet& keep) {
    UtilityTable out;
    for (const auto& a : eu)
        if (keep.contains(a.act)) out.push_back(a);
    return out;
}

inline DecisionProblem restrict_to(const DecisionProblem& problem, const MaximalSet& keep) {
    DecisionProblem out{problem.name, {}};
    for (const auto& a : problem.acts)
        if (keep.contains(a.name)) out.acts.push_back(a);
    return out;
}

enum class Criterion { maximin, min_regret, hurwicz, midpoint, leximin };

/// MEU first, then the probability-free criterion among the maximal acts.
inline std::string secondary_choice(const DecisionProblem& problem, Criterion criterion,
                                    double alpha = 0.5) {
    const auto eu = eu_all(problem);
    const auto best = maximal_set(eu);
    const auto kept = restrict_to(eu, best);
    switch (criterion) {
    case Criterion::maximin: return maximin(kept);
    case Criterion::min_regret: return min_regret(kept);
    case Criterion::hurwicz: return hurwicz(kept, alpha);
    case Criterion::midpoint: return midpoint_rank(kept).front();
    case Criterion::leximin: return leximin(restrict_to(problem, best));
    }
    return best.acts.front();
}

} // namespace credal
