#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "credal/error.hpp"
#include "credal/interval.hpp"

namespace credal {

struct SampleCount {
    std::uint64_t successes = 0;
    std::uint64_t trials = 1;

    void validate() const {
        if (trials == 0) throw InvalidArgument("sample count: trials must be positive");
        if (successes > trials)
            throw InvalidArgument("sample count: " + std::to_string(successes) + " successes exceed " +
                                  std::to_string(trials) + " trials");
    }
};

/// How the miss probability 1 - confidence is split between the bounds.
enum class Tails {
    two_sided, ///< alpha/2 in each tail
    one_sided, ///< each bound is a one-sided bound at level 1 - alpha
};

inline constexpr double kBisectionTolerance = 1e-10;

namespace binomial {

inline double log_pmf(std::uint64_t k, std::uint64_t n, double p) {
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    const double log_choose = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
    return log_choose + kk * std::log(p) + (nn - kk) * std::log1p(-p);
}

inline double pmf(std::uint64_t k, std::uint64_t n, double p) {
    if (k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_pmf(k, n, p));
}

/// P[X <= x] for X ~ Bin(n, p).
inline double cdf(std::uint64_t x, std::uint64_t n, double p) {
    if (x >= n) return 1.0;
    double s = 0.0;
    for (std::uint64_t k = 0; k <= x; ++k) s += pmf(k, n, p);
    return std::min(s, 1.0);
}

/// P[X >= x] for X ~ Bin(n, p).
inline double sf(std::uint64_t x, std::uint64_t n, double p) {
    if (x == 0) return 1.0;
    double s = 0.0;
    for (std::uint64_t k = x; k <= n; ++k) s += pmf(k, n, p);
    return std::min(s, 1.0);
}

} // namespace binomial

/// Exact binomial confidence interval by bisection on the tail sums.
inline ProbInterval clopper_pearson(const SampleCount& c, double confidence,
                                    Tails tails = Tails::two_sided) {
    c.validate();
    if (!(confidence > 0.0 && confidence < 1.0))
        throw InvalidArgument("confidence must lie in (0, 1), got " + std::to_string(confidence));
    const double alpha = 1.0 - confidence;
    const double tail = tails == Tails::two_sided ? alpha / 2.0 : alpha;
    const auto x = c.successes;
    const auto n = c.trials;

    double lower = 0.0;
    if (x > 0) {
        // P[X >= x] increases with p.
        double a = 0.0, b = 1.0;
        while (b - a > kBisectionTolerance) {
            const double mid = 0.5 * (a + b);
            if (binomial::sf(x, n, mid) < tail) a = mid;
            else b = mid;
        }
        lower = 0.5 * (a + b);
    }

    double upper = 1.0;
    if (x < n) {
        // P[X <= x] decreases with p.
        double a = 0.0, b = 1.0;
        while (b - a > kBisectionTolerance) {
            const double mid = 0.5 * (a + b);
            if (binomial::cdf(x, n, mid) > tail) a = mid;
            else b = mid;
        }
        upper = 0.5 * (a + b);
    }
    return {lower, upper};
}

} // namespace credal
