#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>

#include "credal/error.hpp"

namespace credal {

/// Closed real interval [lo, hi] with lo <= hi.
class Interval {
public:
    constexpr Interval() = default;

    Interval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) { // also rejects NaN
            std::ostringstream os;
            os << "invalid interval [" << lo << ", " << hi << "]";
            throw InvalidInterval(os.str());
        }
    }

    static Interval point(double x) { return {x, x}; }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double width() const noexcept { return hi_ - lo_; }
    constexpr double midpoint() const noexcept { return (lo_ + hi_) / 2.0; }
    constexpr bool degenerate() const noexcept { return lo_ == hi_; }

    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    constexpr bool contains(const Interval& other) const noexcept {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Interval of probabilities, 0 <= lo <= hi <= 1.
class ProbInterval {
public:
    /// Defaults to the uncommitted judgment [0, 1].
    constexpr ProbInterval() = default;

    ProbInterval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
            std::ostringstream os;
            os << "invalid probability interval [" << lo << ", " << hi << "]";
            throw InvalidInterval(os.str());
        }
    }

    static ProbInterval point(double p) { return {p, p}; }
    static constexpr ProbInterval vacuous() { return {}; }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double width() const noexcept { return hi_ - lo_; }
    constexpr double midpoint() const noexcept { return (lo_ + hi_) / 2.0; }
    constexpr bool degenerate() const noexcept { return lo_ == hi_; }

    constexpr bool contains(double p) const noexcept { return lo_ <= p && p <= hi_; }
    constexpr bool contains(const ProbInterval& other) const noexcept {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }

    /// Interval for the negated event: [1 - hi, 1 - lo].
    ProbInterval complement() const { return {1.0 - hi_, 1.0 - lo_}; }

    Interval as_interval() const { return {lo_, hi_}; }

    friend constexpr bool operator==(const ProbInterval&, const ProbInterval&) = default;

private:
    double lo_ = 0.0;
    double hi_ = 1.0;
};

/// Affine image {c*x + d : x in i}.
inline Interval scale_add(const Interval& i, double c, double d) {
    const double a = c * i.lo() + d;
    const double b = c * i.hi() + d;
    return {std::min(a, b), std::max(a, b)};
}

/// Tightest bounds on P(A and B) knowing only P(A) in p and P(B) in q.
inline ProbInterval frechet_and(const ProbInterval& p, const ProbInterval& q) {
    const double lo = std::max(0.0, p.lo() + q.lo() - 1.0);
    const double hi = std::min(p.hi(), q.hi());
    return {std::min(lo, hi), hi};
}

/// Strict interval dominance: every value of a exceeds every value of b.
constexpr bool dominates(const Interval& a, const Interval& b) noexcept {
    return a.lo() > b.hi();
}

inline std::ostream& operator<<(std::ostream& os, const Interval& i) {
    return os << '[' << i.lo() << ", " << i.hi() << ']';
}

inline std::ostream& operator<<(std::ostream& os, const ProbInterval& p) {
    return os << '[' << p.lo() << ", " << p.hi() << ']';
}

} // namespace credal
