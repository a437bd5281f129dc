#pragma once

// Subcommand bodies for the credal CLI. Each returns the process exit code:
// 0 decided or risk problem, 1 error, 2 no mandate.

#include <cctype>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "credal/credal.hpp"
#include "credal/io.hpp"
#include "replicate.hpp"

namespace credal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoMandate = 2;

using replicate::fmt;

struct DecideOptions {
    bool json = false;
    std::optional<double> tolerance;
    bool odds_derived = false;
};

inline ToleranceSpec resolve_tolerance(const ProblemFile& f, const DecideOptions& o) {
    if (o.odds_derived) return ToleranceSpec::odds_derived();
    if (o.tolerance) return ToleranceSpec::explicit_error(*o.tolerance);
    if (f.tolerance) return *f.tolerance;
    return ToleranceSpec::explicit_error(1.0);
}

inline void print_trace(std::ostream& out, const DecisionReport& r) {
    out << std::left << std::setw(7) << "level" << std::setw(9) << "error" << std::setw(10) << "act"
        << std::setw(24) << "utility" << "maximal\n";
    for (const auto& row : r.trace) {
        for (std::size_t i = 0; i < row.utilities.size(); ++i) {
            const auto& u = row.utilities[i];
            out << std::left << std::setw(7) << (i == 0 ? std::to_string(row.index) : "")
                << std::setw(9) << (i == 0 ? fmt(row.error) : "") << std::setw(10) << u.act;
            if (i == 0) out << std::setw(24) << fmt(u.eu) << replicate::fmt(row.maximal.acts);
            else out << fmt(u.eu);
            out << '\n';
        }
    }
}

inline int exit_code(const DecisionReport& r) {
    return r.status == Status::no_mandate ? kExitNoMandate : kExitOk;
}

inline int cmd_decide(const std::string& path, const DecideOptions& opts, std::ostream& out,
                      std::ostream& err) {
    try {
        const auto file = load_problem_file(path);
        const auto seq = build_sequence(file);
        const auto report = explore(file.problem, seq, resolve_tolerance(file, opts));
        if (opts.json) {
            out << to_json(report).dump(2) << '\n';
        } else {
            out << "problem: " << file.problem.name << "  tolerance: " << fmt(report.tolerance) << '\n';
            print_trace(out, report);
            out << "status: " << to_string(report.status);
            if (report.act) out << ' ' << *report.act;
            if (report.level) out << " (level " << *report.level << ", error " << fmt(*report.error) << ')';
            if (report.ambiguous) out << " [ambiguous: tied point utilities]";
            out << '\n';
        }
        return exit_code(report);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

struct CompareOptions {
    std::optional<std::size_t> level;
    double alpha = 0.5;
};

/// Every criterion on one level. Secondary criteria see only the maximal set.
inline int cmd_compare(const std::string& path, const CompareOptions& opts, std::ostream& out,
                       std::ostream& err) {
    try {
        if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0))
            throw InvalidArgument("--alpha must lie in [0, 1]");
        const auto file = load_problem_file(path);
        const auto seq = build_sequence(file);
        const CredalLevel* level = &seq.levels.front();
        if (opts.level) {
            level = nullptr;
            for (const auto& l : seq.levels)
                if (l.index == *opts.level) level = &l;
            if (!level) throw InvalidArgument("no level with index " + std::to_string(*opts.level));
        }
        const auto at = apply_level(file.problem, *level);
        const auto eu = eu_all(at);
        const auto best = maximal_set(eu);
        const auto kept = restrict_to(eu, best);

        out << "problem: " << file.problem.name << "  level " << level->index << " (error "
            << fmt(level->error) << ")\n";
        for (const auto& a : eu) out << "  " << std::left << std::setw(10) << a.act << fmt(a.eu) << '\n';
        std::ostringstream h;
        h << "hurwicz(" << fmt(opts.alpha, 2) << ")";
        const auto rank = midpoint_rank(kept);
        const std::vector<std::pair<std::string, std::string>> rows{
            {"dominance", replicate::fmt(best.acts)},
            {"maximin", maximin(kept)},
            {"min-regret", min_regret(kept)},
            {h.str(), hurwicz(kept, opts.alpha)},
            {"midpoint", rank.front() + "  (rank " + replicate::fmt(rank) + ")"},
            {"leximin", leximin(restrict_to(at, best))},
        };
        out << std::left << std::setw(16) << "criterion" << "choice\n";
        for (const auto& [name, choice] : rows) out << std::left << std::setw(16) << name << choice << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

inline int cmd_replicate(const std::string& which, std::ostream& out, std::ostream& err) {
    try {
        if (which.size() != 1) throw InvalidArgument("expected one of A, B, C, D");
        const auto r = replicate::run(static_cast<char>(std::toupper(static_cast<unsigned char>(which[0]))));
        out << "example " << r.title << '\n';
        for (const auto& c : r.checks) {
            out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
            if (!c.detail.empty()) out << "  -> " << c.detail;
            out << '\n';
        }
        for (const auto& n : r.notes) out << "  [note] " << n << '\n';
        out << (r.passed() ? "all checks passed\n" : "some checks FAILED\n");
        return r.passed() ? kExitOk : kExitError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

inline int cmd_cp(std::uint64_t successes, std::uint64_t trials, double confidence, bool one_sided,
                  std::ostream& out, std::ostream& err) {
    try {
        const auto p = clopper_pearson({successes, trials}, confidence,
                                       one_sided ? Tails::one_sided : Tails::two_sided);
        out << fmt(p) << '\n';
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

struct DsThresholdOptions {
    std::vector<double> m1; // m(G), m(~G)
    std::vector<double> m2;
    double target = 0.75;
};

inline MassFunction binary_mass(const std::vector<double>& g_ng, const char* flag) {
    if (g_ng.size() != 2) throw InvalidArgument(std::string(flag) + " expects two masses: m(G),m(~G)");
    std::map<FocalSet, double> m{{0b01, g_ng[0]}, {0b10, g_ng[1]}};
    const double rest = 1.0 - g_ng[0] - g_ng[1];
    if (rest > kMassTolerance) m[0b11] = rest;
    return MassFunction({"G", "~G"}, m);
}

/// Discount rate at which P(G) crosses the target, and the act Jerry's
/// Berries (with ~H accepted) mandates on each side.
inline int cmd_ds_threshold(const DsThresholdOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const auto m1 = binary_mass(o.m1, "--m1");
        const auto m2 = binary_mass(o.m2, "--m2");
        const FocalSet g = m1.subset({"G"});
        const double r_star = discount_threshold(m1, m2, g, o.target);
        out << "r* = " << fmt(r_star) << '\n';

        const auto problem = parse_problem_file(fixtures::example_d).problem;
        const auto side = [&](double r, const char* rel) {
            const double p = bel_pl_interval(dempster_combine(m1, discount(m2, r)), g).lo();
            const auto report = replicate::decide_with_point_belief(problem, p);
            out << "r " << rel << ' ' << fmt(r_star) << ": P(G) = " << fmt(p) << " at r = " << fmt(r)
                << ", " << report.act.value_or("no act") << " mandated\n";
        };
        if (r_star > 0.0) side(r_star / 2.0, "<");
        if (r_star < 1.0) side((1.0 + r_star) / 2.0, ">");
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace credal::cli
