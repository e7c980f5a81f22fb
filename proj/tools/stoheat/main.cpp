#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stoheat/quadrature.hpp"
#include "stoheat/series.hpp"

#include "commands.hpp"
#include "config.hpp"

namespace {

using stoheat::cli::ExperimentConfig;
using stoheat::cli::UsageError;

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot read configuration file '" + path + "'");
    std::ostringstream os;
    os << file.rdbuf();
    return os.str();
}

/// Scratch space the CLI options write into; merged over the configuration
/// document only for flags that were actually given.
struct FlagValues {
    std::string config_path;
    std::vector<double> p;
    double T = 0.0;
    std::vector<std::uint32_t> N;
    std::uint32_t m_max = 0;
    double rel_tol = 0.0;
    unsigned quad_order = 0;
    std::uint64_t samples = 0;
    std::uint32_t workers = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
};

void register_options(CLI::App* app, FlagValues& fv) {
    app->add_option("--config", fv.config_path, "JSON configuration document");
    app->add_option("--p", fv.p, "Sobolev orders, comma separated, each in [0, 1/2)")
        ->delimiter(',');
    app->add_option("--T", fv.T, "final time (default 1)");
    app->add_option("--N", fv.N, "step counts, comma separated")->delimiter(',');
    app->add_option("--m-max", fv.m_max, "mode cap for series truncation (default 1000000)");
    app->add_option("--rel-tol", fv.rel_tol, "relative tail tolerance (default 1e-10)");
    app->add_option("--quad-order", fv.quad_order, "Gauss-Legendre order (default 16)");
    app->add_option("--samples", fv.samples, "Monte Carlo replicates (default 100000)");
    app->add_option("--workers", fv.workers, "Monte Carlo worker threads (default 1)");
    app->add_option("--seed", fv.seed, "root seed of the counter-based stream (default 12345)");
    app->add_option("--out", fv.out, "output path, '-' for stdout (default '-')");
    app->add_option("--format", fv.format, "output format: csv | json (default csv)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weak and strong error laboratory for the implicit-Euler discretization\n"
                 "of the spectral stochastic heat equation on (0,1)."};
    app.require_subcommand(0, 1);

    FlagValues fv;
    register_options(&app, fv);

    std::vector<CLI::App*> apps{&app};
    const std::vector<std::pair<std::string, std::string>> command_list = {
        {"weak-error", "semi-analytic weak error of the squared H^{-p} norm over a (p, N) sweep"},
        {"rate", "log-log slope fits of |weak error| against h (plus the per-point table)"},
        {"decompose", "split the weak error into last-step, drift, and quadratic-variation terms"},
        {"mc-validate", "Monte Carlo oracle suite against the closed-form moments"},
        {"bounds", "normalized spectral-series bounds and the step-sum rate window"},
        {"strong-error", "closed-form mean-square scheme error over an N sweep (plus slope fit)"},
    };
    for (const auto& [name, desc] : command_list) {
        CLI::App* sub = app.add_subcommand(name, desc);
        register_options(sub, fv);
        apps.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : stoheat::cli::kExitUsage;
    }

    const auto given = [&apps](const std::string& name) {
        for (CLI::App* a : apps) {
            const CLI::Option* opt = a->get_option_no_throw(name);
            if (opt != nullptr && opt->count() > 0) return true;
        }
        return false;
    };

    try {
        ExperimentConfig cfg;
        if (given("--config")) cfg = stoheat::cli::parse_config(read_file(fv.config_path), cfg);

        if (given("--p")) cfg.p = fv.p;
        if (given("--T")) cfg.T = fv.T;
        if (given("--N")) cfg.N = fv.N;
        if (given("--m-max")) cfg.series.m_max = fv.m_max;
        if (given("--rel-tol")) cfg.series.rel_tol = fv.rel_tol;
        if (given("--quad-order")) cfg.series.quad_order = fv.quad_order;
        if (given("--samples")) cfg.samples = fv.samples;
        if (given("--workers")) cfg.workers = fv.workers;
        if (given("--seed")) cfg.seed = fv.seed;
        if (given("--out")) cfg.out = fv.out;
        if (given("--format")) cfg.format = fv.format;

        const auto parsed = app.get_subcommands();
        if (!parsed.empty()) cfg.command = parsed.front()->get_name();
        if (cfg.command.empty())
            throw UsageError(
                "no command selected: name a subcommand or set \"command\" in --config");

        stoheat::cli::validate_config(cfg);
        return stoheat::cli::run_command(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return stoheat::cli::kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return stoheat::cli::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return stoheat::cli::kExitUsage;
    } catch (const stoheat::TruncationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return stoheat::cli::kExitNumerical;
    } catch (const stoheat::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return stoheat::cli::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return stoheat::cli::kExitNumerical;
    }
}
