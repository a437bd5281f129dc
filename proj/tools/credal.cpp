#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace credal::cli;

    CLI::App app{"Interval expected-utility decisions over error-indexed credal sequences"};
    app.require_subcommand(1);
    int code = kExitOk;

    auto* decide = app.add_subcommand("decide", "Explore a problem file's credal sequence best-first");
    std::string decide_path;
    DecideOptions decide_opts;
    double tolerance = 0.0;
    decide->add_option("file", decide_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    decide->add_flag("--json", decide_opts.json, "Emit the full report as JSON");
    auto* tol_opt = decide->add_option("--tolerance", tolerance, "Largest tolerable level error")
                        ->check(CLI::Range(0.0, 1.0));
    decide->add_flag("--odds-derived", decide_opts.odds_derived, "Derive the tolerance from the stakes")
        ->excludes(tol_opt);
    decide->callback([&] {
        if (*tol_opt) decide_opts.tolerance = tolerance;
        code = cmd_decide(decide_path, decide_opts, std::cout, std::cerr);
    });

    auto* compare = app.add_subcommand("compare", "Tabulate dominance and the secondary criteria at one level");
    std::string compare_path;
    CompareOptions compare_opts;
    std::size_t level = 0;
    compare->add_option("file", compare_path, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    auto* level_opt = compare->add_option("--level", level, "Level index (default: first level)");
    compare->add_option("--alpha", compare_opts.alpha, "Hurwicz optimism weight")->check(CLI::Range(0.0, 1.0));
    compare->callback([&] {
        if (*level_opt) compare_opts.level = level;
        code = cmd_compare(compare_path, compare_opts, std::cout, std::cerr);
    });

    auto* replicate = app.add_subcommand("replicate", "Run a built-in Jerry's Berries scenario and check it");
    std::string which;
    replicate->add_option("example", which, "A, B, C or D")->required()->check(CLI::IsMember({"A", "B", "C", "D"}));
    replicate->callback([&] { code = cmd_replicate(which, std::cout, std::cerr); });

    auto* cp = app.add_subcommand("cp", "Clopper-Pearson interval for a binomial sample");
    std::uint64_t successes = 0, trials = 0;
    double confidence = 0.95;
    bool one_sided = false;
    cp->add_option("successes", successes)->required();
    cp->add_option("trials", trials)->required();
    cp->add_option("confidence", confidence)->required();
    cp->add_flag("--one-sided", one_sided, "Put the whole miss probability in each bound's tail");
    cp->callback([&] { code = cmd_cp(successes, trials, confidence, one_sided, std::cout, std::cerr); });

    auto* ds = app.add_subcommand("ds-threshold", "Discount rate at which combined belief in G hits a target");
    DsThresholdOptions ds_opts;
    ds->add_option("--m1", ds_opts.m1, "m(G),m(~G) of the first source")->required()->delimiter(',');
    ds->add_option("--m2", ds_opts.m2, "m(G),m(~G) of the discounted source")->required()->delimiter(',');
    ds->add_option("--target", ds_opts.target, "Target probability of G")->required();
    ds->callback([&] { code = cmd_ds_threshold(ds_opts, std::cout, std::cerr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }
    return code;
}
