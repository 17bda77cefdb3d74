// fracdiff command-line front end. Talks to the solver through the C API only.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracdiff/fracdiff.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAccuracy = 2;

int report(fd_status st) {
    if (st == FD_OK) return kExitOk;
    std::fprintf(stderr, "fracdiff: %s: %s\n", fd_status_name(st), fd_last_error());
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    fd_study_config defaults;
    fd_study_config_default(&defaults);

    int example = defaults.example;
    double alpha = defaults.alpha;
    std::vector<double> gammas(defaults.gammas, defaults.gammas + defaults.gamma_count);
    std::vector<size_t> ns(defaults.ns, defaults.ns + defaults.n_count);
    size_t m = defaults.m;
    size_t terms = defaults.terms;
    std::string out = ".";
    unsigned threads = 0;
    double x = 0.0;
    std::uint64_t seed = 20240615;

    CLI::App app{"Time-fractional diffusion solver on graded meshes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");
    app.add_option("--example", example, "benchmark problem")->check(CLI::IsMember({1, 2}));
    app.add_option("--alpha", alpha, "fractional order in (0, 1]");
    app.add_option("--gamma", gammas, "mesh grading exponent (repeatable)")
        ->take_all();
    app.add_option("--n", ns, "time steps, a doubling sequence (repeatable)")
        ->take_all();
    app.add_option("--m", m, "spatial subintervals");
    app.add_option("--terms", terms, "reference series terms");
    app.add_option("--out", out, "output directory");
    app.add_option("--threads", threads, "worker threads, 0 = all cores");

    auto* solve = app.add_subcommand("solve", "write solution.csv for the first N and gamma");
    auto* conv = app.add_subcommand("convergence", "write table.csv over all (N, gamma)");
    auto* nodal = app.add_subcommand("nodal-errors", "write nodal_errors_<gamma>.csv per gamma");
    auto* mlf = app.add_subcommand("mlf", "print E_alpha(-x)");
    mlf->add_option("x", x, "argument, x >= 0")->required();
    auto* selftest = app.add_subcommand("selftest", "run the randomized diagnostic suite");
    selftest->add_option("--seed", seed, "random seed");
    for (auto* sub : {solve, conv, nodal, mlf, selftest}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    fd_study_config cfg = defaults;
    cfg.example = example;
    cfg.alpha = alpha;
    cfg.gammas = gammas.data();
    cfg.gamma_count = gammas.size();
    cfg.ns = ns.data();
    cfg.n_count = ns.size();
    cfg.m = m;
    cfg.terms = terms;
    cfg.output_dir = out.c_str();
    cfg.threads = threads;

    if (*solve) return report(fd_cmd_solve(&cfg));
    if (*conv) return report(fd_cmd_convergence(&cfg));
    if (*nodal) return report(fd_cmd_nodal_errors(&cfg));
    if (*mlf) {
        double v = 0.0;
        const fd_status st = fd_mlf_neg(alpha, x, &v);
        if (st != FD_OK) return report(st);
        std::printf("%.15g\n", v);
        return kExitOk;
    }
    if (*selftest) {
        fd_diagnostic diags[16];
        size_t count = 0;
        const fd_status st = fd_selftest(seed, diags, std::size(diags), &count);
        if (st != FD_OK && count == 0) {
            report(st);
            return st == FD_ERR_ACCURACY ? kExitAccuracy : kExitUsage;
        }
        for (size_t i = 0; i < count && i < std::size(diags); ++i) {
            const auto& d = diags[i];
            std::printf("%s %s: worst %.3e, tolerance %.1e, %zu cases\n", d.passed ? "PASS" : "FAIL",
                        d.name, d.worst, d.tolerance, d.cases);
        }
        return st == FD_OK ? kExitOk : kExitAccuracy;
    }
    return kExitUsage;
}
