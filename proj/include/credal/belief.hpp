#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "credal/error.hpp"
#include "credal/interval.hpp"

namespace credal {

/// Subset of a frame as a bitmask over atom positions.
using FocalSet = std::uint16_t;

inline constexpr std::size_t kMaxFrameSize = 8;
inline constexpr double kMassTolerance = 1e-9;

/// Dempster-Shafer basic probability assignment over a frame of 2..8 atoms.
/// Masses are stored densely, one slot per subset.
class MassFunction {
public:
    MassFunction(std::vector<std::string> frame, const std::map<FocalSet, double>& masses)
        : frame_(std::move(frame)) {
        check_frame();
        masses_.assign(std::size_t{1} << frame_.size(), 0.0);
        double total = 0.0;
        for (const auto& [set, m] : masses) {
            if (set == 0) throw InvalidArgument("mass function: the empty set cannot carry mass");
            if (set > full())
                throw InvalidArgument("mass function: focal set outside the frame");
            if (!(m >= 0.0)) throw InvalidArgument("mass function: negative mass");
            masses_[set] += m;
            total += m;
        }
        if (std::abs(total - 1.0) > kMassTolerance)
            throw InvalidArgument("mass function: masses sum to " + std::to_string(total) + ", not 1");
    }

    /// All mass on the whole frame.
    static MassFunction vacuous(std::vector<std::string> frame) {
        const FocalSet all = static_cast<FocalSet>((1u << frame.size()) - 1u);
        return MassFunction(std::move(frame), std::map<FocalSet, double>{{all, 1.0}});
    }

    const std::vector<std::string>& frame() const noexcept { return frame_; }
    FocalSet full() const noexcept { return static_cast<FocalSet>(masses_.size() - 1); }
    double mass(FocalSet set) const { return set < masses_.size() ? masses_[set] : 0.0; }

    /// Bitmask of the named atoms.
    FocalSet subset(std::initializer_list<std::string> atoms) const {
        return subset(std::vector<std::string>(atoms));
    }
    FocalSet subset(const std::vector<std::string>& atoms) const {
        FocalSet s = 0;
        for (const auto& a : atoms) {
            auto it = std::find(frame_.begin(), frame_.end(), a);
            if (it == frame_.end()) throw UnknownLabel("atom '" + a + "' is not in the frame");
            s |= static_cast<FocalSet>(1u << (it - frame_.begin()));
        }
        return s;
    }

    std::vector<FocalSet> focal_sets() const {
        std::vector<FocalSet> out;
        for (std::size_t s = 1; s < masses_.size(); ++s)
            if (masses_[s] > 0.0) out.push_back(static_cast<FocalSet>(s));
        return out;
    }

    /// Every focal set is a singleton.
    bool is_bayesian() const {
        for (auto s : focal_sets())
            if (std::popcount(static_cast<unsigned>(s)) != 1) return false;
        return true;
    }

    friend bool operator==(const MassFunction&, const MassFunction&) = default;

private:
    friend MassFunction discount(const MassFunction&, double);
    friend MassFunction dempster_combine(const MassFunction&, const MassFunction&);

    struct Dense {};
    MassFunction(Dense, std::vector<std::string> frame, std::vector<double> dense)
        : frame_(std::move(frame)), masses_(std::move(dense)) {}

    void check_frame() const {
        if (frame_.size() < 2 || frame_.size() > kMaxFrameSize)
            throw InvalidArgument("mass function: frame must have 2.." + std::to_string(kMaxFrameSize) +
                                  " atoms");
        if (std::set<std::string>(frame_.begin(), frame_.end()).size() != frame_.size())
            throw InvalidArgument("mass function: duplicate atom in frame");
    }

    std::vector<std::string> frame_;
    std::vector<double> masses_;
};

inline bool approx_equal(const MassFunction& a, const MassFunction& b, double tol) {
    if (a.frame() != b.frame()) return false;
    for (FocalSet s = 1; s <= a.full(); ++s)
        if (std::abs(a.mass(s) - b.mass(s)) > tol) return false;
    return true;
}

/// Shafer discounting by r: m'(A) = (1-r) m(A) for A != frame, the rest on the frame.
inline MassFunction discount(const MassFunction& m, double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw InvalidArgument("discount rate must lie in [0, 1], got " + std::to_string(r));
    std::vector<double> out(m.masses_.size());
    for (std::size_t s = 1; s < out.size(); ++s) out[s] = (1.0 - r) * m.masses_[s];
    out[m.full()] = r + (1.0 - r) * m.masses_[m.full()];
    return MassFunction(MassFunction::Dense{}, m.frame(), std::move(out));
}

/// Dempster's rule of combination with normalization by 1 - conflict.
inline MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
    if (m1.frame() != m2.frame()) throw InvalidArgument("dempster_combine: frames differ");
    const auto n = m1.masses_.size();
    std::vector<double> joint(n, 0.0);
    double conflict = 0.0;
    for (std::size_t a = 1; a < n; ++a) {
        if (m1.masses_[a] == 0.0) continue;
        for (std::size_t b = 1; b < n; ++b) {
            if (m2.masses_[b] == 0.0) continue;
            const double w = m1.masses_[a] * m2.masses_[b];
            if (const auto c = a & b; c == 0) conflict += w;
            else joint[c] += w;
        }
    }
    if (conflict > 0.0) {
        double support = 0.0;
        for (double w : joint) support += w;
        if (support <= 0.0) throw TotalConflict("dempster_combine: total conflict between sources");
        for (auto& w : joint) w /= support;
    }
    return MassFunction(MassFunction::Dense{}, m1.frame(), std::move(joint));
}

/// [bel(event), pl(event)].
inline ProbInterval bel_pl_interval(const MassFunction& m, FocalSet event) {
    if (event == 0 || event > m.full()) throw InvalidArgument("bel_pl_interval: event must be a non-empty subset");
    double bel = 0.0, pl = 0.0;
    for (FocalSet s = 1; s <= m.full(); ++s) {
        const double w = m.mass(s);
        if ((s & event) == s) bel += w;
        if ((s & event) != 0) pl += w;
    }
    bel = std::clamp(bel, 0.0, 1.0);
    pl = std::clamp(pl, bel, 1.0);
    return {bel, pl};
}

/// Discount rate r* at which bel(event) of m1 combined with m2 discounted by
/// r* equals target. Bisection on [0, 1].
inline double discount_threshold(const MassFunction& m1, const MassFunction& m2, FocalSet event,
                                 double target, double tol = 1e-9) {
    if (m1.frame().size() != 2) throw InvalidArgument("discount_threshold: frame must be binary");
    if (!m1.is_bayesian()) throw InvalidArgument("discount_threshold: first mass function must be Bayesian");
    auto f = [&](double r) { return bel_pl_interval(dempster_combine(m1, discount(m2, r)), event).lo(); };

    const double f0 = f(0.0);
    const double f1 = f(1.0);
    constexpr int kProbe = 100;
    const double dir = f1 >= f0 ? 1.0 : -1.0;
    double prev = f0;
    for (int i = 1; i <= kProbe; ++i) {
        const double cur = f(static_cast<double>(i) / kProbe);
        if (dir * (cur - prev) < -1e-12)
            throw InvalidArgument("discount_threshold: belief is not monotone in r");
        prev = cur;
    }
    if (f0 == target) return 0.0;
    if (f1 == target) return 1.0;
    if ((f0 - target) * (f1 - target) > 0.0)
        throw NotBracketed("discount_threshold: target " + std::to_string(target) + " outside [" +
                           std::to_string(std::min(f0, f1)) + ", " + std::to_string(std::max(f0, f1)) +
                           "] attained for r in [0, 1]");
    double a = 0.0, b = 1.0;
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        if ((f(mid) - target) * (f0 - target) > 0.0) a = mid;
        else b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace credal
