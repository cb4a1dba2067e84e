// modsurf: exact invariants of finite-index subgroups of the modular group
// and of the real elliptic surfaces built from them.

#include "modsurf/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

int env_coset_budget() {
    if (const char* raw = std::getenv("MODSURF_COSET_BUDGET")) {
        try {
            const int v = std::stoi(raw);
            if (v > 0) return v;
        } catch (const std::exception&) {
            // fall through to the default on malformed values
        }
        std::cerr << "warning: ignoring invalid MODSURF_COSET_BUDGET=" << raw << "\n";
    }
    return modsurf::kDefaultCosetBudget;
}

}   // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for modular subgroups and real elliptic modular surfaces"};
    app.require_subcommand(1);
    app.fallthrough();   // accept global flags after the subcommand name

    modsurf::RunOptions opts;
    opts.coset_budget = env_coset_budget();
    app.add_flag("--json", opts.json, "emit JSON instead of text");
    app.add_option("--coset-budget", opts.coset_budget,
                   "maximum number of coset-table rows (overrides MODSURF_COSET_BUDGET)")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol", opts.tolerance, "tolerance for real/threshold comparisons")
        ->check(CLI::PositiveNumber);

    std::string subgroup_path;
    CLI::App* analyze = app.add_subcommand("analyze", "invariants of a subgroup file");
    analyze->add_option("file", subgroup_path, "JSON subgroup description")->required();

    int k = 2;
    CLI::App* gamma = app.add_subcommand("gamma-k", "build and report one family member");
    gamma->add_option("--k", k, "family parameter (>= 2)")->required()->check(CLI::Range(2, 1000));
    gamma->add_option("--svg", opts.svg_path, "also write the fundamental-domain SVG here");

    int from = 2, to = 12;
    CLI::App* verify = app.add_subcommand("verify", "check the extremal family over a k range");
    verify->add_option("--from", from, "first k (>= 2)")->required();
    verify->add_option("--to", to, "last k")->required();

    double tau_re = 0.0, tau_im = 1.0;
    CLI::App* curve = app.add_subcommand("curve", "classify the genus-1 curve with period tau");
    curve->add_option("--tau", [&tau_re, &tau_im](const std::vector<std::string>& vals) {
             try {
                 tau_re = std::stod(vals.at(0));
                 tau_im = std::stod(vals.at(1));
             } catch (const std::exception&) {
                 return false;
             }
             return true;
         },
         "period: RE IM")
        ->expected(2)
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return modsurf::kExitInputError;
    }

    if (analyze->parsed())
        return modsurf::cmd_analyze(subgroup_path, opts, std::cout, std::cerr);
    if (gamma->parsed()) return modsurf::cmd_gamma_k(k, opts, std::cout, std::cerr);
    if (verify->parsed()) return modsurf::cmd_verify(from, to, opts, std::cout, std::cerr);
    if (curve->parsed()) return modsurf::cmd_curve(tau_re, tau_im, opts, std::cout, std::cerr);
    return modsurf::kExitInputError;
}
