// nlmc: finite-state nonlinear Markov chain toolkit.
//
// Subcommands: validate, coeffs, verify, evolve, invariant, bound, simulate,
// lln, example, table1. Exit codes: 0 success, 2 validation failure,
// 3 inconclusive regime, 4 bound violation, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlmc/bounds.hpp"
#include "nlmc/casestudy.hpp"
#include "nlmc/coefficients.hpp"
#include "nlmc/invariant.hpp"
#include "nlmc/io.hpp"
#include "nlmc/montecarlo.hpp"
#include "nlmc/parallel.hpp"
#include "nlmc/rng.hpp"
#include "nlmc/simd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitBoundViolation = 4;

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

nlmc::Distribution parse_mu0(const std::string& spec, std::size_t n) {
    if (spec == "uniform") return nlmc::Distribution::uniform(n);
    if (spec.rfind("vertex:", 0) == 0) {
        std::size_t idx = std::stoul(spec.substr(7));
        if (idx < 1 || idx > n) throw CliError(kExitOther, "mu0 vertex index out of range (1-based)");
        return nlmc::Distribution::vertex(n, idx - 1);
    }
    std::vector<double> probs;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) probs.push_back(std::stod(cell));
    if (probs.size() != n)
        throw CliError(kExitOther, "mu0 has " + std::to_string(probs.size()) + " entries, kernel has " +
                                       std::to_string(n) + " states");
    return nlmc::Distribution(std::move(probs));
}

std::vector<double> parse_observable(const std::string& spec, std::size_t n) {
    if (spec.rfind("indicator:", 0) == 0) {
        std::size_t idx = std::stoul(spec.substr(10));
        if (idx < 1 || idx > n) throw CliError(kExitOther, "observable index out of range (1-based)");
        std::vector<double> g(n, 0.0);
        g[idx - 1] = 1.0;
        return g;
    }
    if (spec.rfind("const:", 0) == 0) return std::vector<double>(n, std::stod(spec.substr(6)));
    std::vector<double> g;
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) g.push_back(std::stod(cell));
    if (g.size() != n)
        throw CliError(kExitOther, "observable has " + std::to_string(g.size()) +
                                       " entries, kernel has " + std::to_string(n) + " states");
    return g;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        nlmc::write_file(path, content);
}

nlmc::KernelFile load_or_die(const std::string& path) {
    try {
        return nlmc::load_kernel_file(path);
    } catch (const std::exception& e) {
        throw CliError(kExitValidation, e.what());
    }
}

struct CommonSearchOpts {
    int resolution = 8;
    std::uint64_t samples = 2000;
    std::uint64_t seed = 1;
    double min_sep = 1e-6;
    double tie_tol = 1e-9;
};

void add_search_opts(CLI::App* cmd, CommonSearchOpts& opts) {
    cmd->add_option("--resolution", opts.resolution, "simplex lattice resolution")
        ->capture_default_str();
    cmd->add_option("--samples", opts.samples, "extra Dirichlet sample count")
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--min-sep", opts.min_sep, "minimum tv(mu,nu) admitted into the Lipschitz ratio")
        ->capture_default_str();
    cmd->add_option("--tie-tol", opts.tie_tol, "|lambda - alpha| tolerance for the linear regime")
        ->capture_default_str();
}

void echo_search_opts(nlmc::CsvWriter& csv, const CommonSearchOpts& opts) {
    csv.config("resolution", opts.resolution);
    csv.config("samples", opts.samples);
    csv.config("seed", opts.seed);
    csv.config("min_sep", opts.min_sep);
    csv.config("tie_tol", opts.tie_tol);
}

void echo_env(nlmc::CsvWriter& csv) {
    csv.config("simd", std::string(nlmc::simd::active_name()));
    csv.config("rng", nlmc::rng_name());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-state nonlinear Markov chain toolkit"};
    app.require_subcommand(1);

    int threads = 0;
    std::string simd_mode = "auto";
    app.add_option("--threads", threads, "worker threads (0 = all cores; results do not depend on it)")
        ->capture_default_str();
    app.add_option("--simd", simd_mode, "kernel backend: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}))
        ->capture_default_str();

    std::string kernel_path, output = "-", mu0_spec = "uniform", g_spec;
    int k = 3, n_max = 200, n_steps = 100, paths = 1000;
    double gamma = 0.5, tol = 1e-13, slack = 1e-9;
    int max_iter = 1000000;
    double alpha = 0.0, lambda_k = 0.0, lambda_1 = 0.0, initial_tv = 2.0;
    std::vector<int> n_list;
    CommonSearchOpts search;

    auto* validate = app.add_subcommand("validate", "check a kernel definition file");
    validate->add_option("kernel", kernel_path, "kernel JSON file")->required();

    auto* coeffs = app.add_subcommand("coeffs", "estimate alpha_k, lambda_k, lambda_1 and the regime");
    coeffs->add_option("kernel", kernel_path)->required();
    coeffs->add_option("-k,--k", k, "number of transition steps")->capture_default_str();
    add_search_opts(coeffs, search);
    coeffs->add_option("-o,--output", output, "CSV output path ('-' = stdout text report)");

    auto* verify = app.add_subcommand("verify", "check the decay bound against the exact law flow");
    verify->add_option("kernel", kernel_path)->required();
    verify->add_option("-k,--k", k)->capture_default_str();
    verify->add_option("--n-max", n_max, "steps to verify")->capture_default_str();
    verify->add_option("--mu0", mu0_spec, "initial law: uniform, vertex:<i>, or comma list")
        ->capture_default_str();
    verify->add_option("--slack", slack, "absolute slack added to the bound")->capture_default_str();
    verify->add_option("--tol", tol, "fixed-point tolerance")->capture_default_str();
    add_search_opts(verify, search);
    verify->add_option("-o,--output", output, "decay curve CSV path");

    auto* evolve = app.add_subcommand("evolve", "write the law flow mu_0..mu_n as CSV");
    evolve->add_option("kernel", kernel_path)->required();
    evolve->add_option("-n,--n", n_steps, "steps")->capture_default_str();
    evolve->add_option("--mu0", mu0_spec)->capture_default_str();
    evolve->add_option("-o,--output", output);

    auto* invariant = app.add_subcommand("invariant", "solve pi = pi P_pi by law-flow iteration");
    invariant->add_option("kernel", kernel_path)->required();
    invariant->add_option("--mu0", mu0_spec)->capture_default_str();
    invariant->add_option("--tol", tol)->capture_default_str();
    invariant->add_option("--max-iter", max_iter)->capture_default_str();
    invariant->add_option("-o,--output", output);

    auto* bound = app.add_subcommand("bound", "evaluate the theoretical decay bound");
    bound->add_option("-k,--k", k)->capture_default_str();
    bound->add_option("--alpha", alpha, "alpha_k")->required();
    bound->add_option("--lambda-k", lambda_k)->capture_default_str();
    bound->add_option("--lambda-1", lambda_1)->capture_default_str();
    bound->add_option("--initial-tv", initial_tv)->capture_default_str();
    bound->add_option("--n-max", n_max)->capture_default_str();
    bound->add_option("--tie-tol", search.tie_tol)->capture_default_str();
    bound->add_option("-o,--output", output);

    auto* simulate = app.add_subcommand("simulate", "sample one trajectory of the chain");
    simulate->add_option("kernel", kernel_path)->required();
    simulate->add_option("-n,--n", n_steps)->capture_default_str();
    simulate->add_option("--mu0", mu0_spec)->capture_default_str();
    simulate->add_option("--seed", search.seed)->capture_default_str();
    simulate->add_option("-o,--output", output);

    auto* lln = app.add_subcommand("lln", "law-of-large-numbers experiment for an observable");
    lln->add_option("kernel", kernel_path)->required();
    lln->add_option("--g", g_spec, "observable: indicator:<i>, const:<v>, or comma list")->required();
    lln->add_option("-n,--n", n_steps, "steps per path")->capture_default_str();
    lln->add_option("--n-list", n_list, "emit a convergence table over these n instead");
    lln->add_option("--paths", paths)->capture_default_str();
    lln->add_option("--mu0", mu0_spec)->capture_default_str();
    lln->add_option("--seed", search.seed)->capture_default_str();
    lln->add_option("-o,--output", output);

    auto* example = app.add_subcommand("example", "emit the four-state example kernel for a gamma");
    example->add_option("--gamma", gamma)->capture_default_str();
    example->add_option("-o,--output", output);

    auto* table1 = app.add_subcommand("table1", "per-step convergence rates for k = 2, 3");
    table1->add_option("--resolution", search.resolution)->capture_default_str();
    table1->add_option("--samples", search.samples)->capture_default_str();
    table1->add_option("--seed", search.seed)->capture_default_str();
    table1->add_option("-o,--output", output);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simd_mode == "scalar") nlmc::simd::force(nlmc::simd::Backend::scalar);
        if (simd_mode == "avx2") nlmc::simd::force(nlmc::simd::Backend::avx2);

        nlmc::SearchConfig cfg;
        cfg.threads = threads;
        cfg.min_sep = search.min_sep;
        cfg.tie_tol = search.tie_tol;

        if (validate->parsed()) {
            try {
                nlmc::load_kernel_file(kernel_path);
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            std::cout << kernel_path << ": ok\n";
            return kExitOk;
        }

        if (coeffs->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::SimplexGrid grid = nlmc::simplex_grid(kf.kernel.n_states(), search.resolution);
            auto extra = nlmc::sample_dirichlet(kf.kernel.n_states(), search.samples, search.seed);
            nlmc::CoefficientReport report =
                nlmc::estimate_coefficients(kf.kernel, k, grid, extra, search.seed, cfg);
            if (output.empty() || output == "-") {
                std::cout << "kernel=" << kernel_path << "\n" << nlmc::report_text(report);
            } else {
                nlmc::CsvWriter csv;
                csv.config("command", "coeffs");
                csv.config("kernel", kernel_path);
                csv.config("k", k);
                echo_search_opts(csv, search);
                echo_env(csv);
                nlmc::report_csv(csv, report);
                emit(output, csv.str());
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::Distribution mu0 = parse_mu0(mu0_spec, kf.kernel.n_states());
            nlmc::SimplexGrid grid = nlmc::simplex_grid(kf.kernel.n_states(), search.resolution);
            auto extra = nlmc::sample_dirichlet(kf.kernel.n_states(), search.samples, search.seed);
            nlmc::CoefficientReport report =
                nlmc::estimate_coefficients(kf.kernel, k, grid, extra, search.seed, cfg);
            if (report.regime == nlmc::Regime::inconclusive) {
                std::cerr << "inconclusive regime: lambda_k = " << report.lambda_k << " > alpha_k = "
                          << report.alpha_k
                          << "; with lambda > alpha there may be either an infinite number of "
                             "invariant measures or no invariant measure at all\n";
                return kExitInconclusive;
            }
            nlmc::FixedPointResult fp = nlmc::find_invariant(kf.kernel, mu0, tol, max_iter);
            if (!fp.converged || fp.residual > 1e-10)
                throw CliError(kExitOther, "invariant solve did not reach residual 1e-10");
            nlmc::BoundParams params = nlmc::BoundParams::make(
                k, report.alpha_k, report.lambda_k, report.lambda_1,
                nlmc::tv_distance(mu0, fp.pi), search.tie_tol);
            nlmc::DecayCurve curve = nlmc::decay_curve(kf.kernel, mu0, fp.pi, params, n_max);
            nlmc::BoundCheck check = nlmc::verify_bound(curve, slack);

            nlmc::CsvWriter csv;
            csv.config("command", "verify");
            csv.config("kernel", kernel_path);
            csv.config("k", k);
            csv.config("mu0", mu0_spec);
            csv.config("n_max", n_max);
            csv.config("slack", slack);
            csv.config("tol", tol);
            echo_search_opts(csv, search);
            echo_env(csv);
            csv.config("alpha_k", report.alpha_k);
            csv.config("lambda_k", report.lambda_k);
            csv.config("lambda_1", report.lambda_1);
            csv.config("regime", std::string(nlmc::to_string(report.regime)));
            csv.config("pi_residual", fp.residual);
            csv.config("bound_holds", check.ok ? "true" : "false");
            if (!check.ok) csv.config("first_violation_n", check.first_violation_n);
            nlmc::decay_curve_csv(csv, curve);
            emit(output, csv.str());
            return check.ok ? kExitOk : kExitBoundViolation;
        }

        if (evolve->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::Distribution mu0 = parse_mu0(mu0_spec, kf.kernel.n_states());
            auto flow = nlmc::law_flow(kf.kernel, mu0, n_steps);
            nlmc::CsvWriter csv;
            csv.config("command", "evolve");
            csv.config("kernel", kernel_path);
            csv.config("mu0", mu0_spec);
            csv.config("n", n_steps);
            echo_env(csv);
            std::vector<std::string> cols{"n"};
            for (const auto& label : kf.states) cols.push_back("p_" + label);
            csv.columns(cols);
            for (std::size_t t = 0; t < flow.size(); ++t) {
                std::vector<std::string> cells{std::to_string(t)};
                for (std::size_t i = 0; i < flow[t].size(); ++i)
                    cells.push_back(nlmc::format_double(flow[t][i]));
                csv.row(cells);
            }
            emit(output, csv.str());
            return kExitOk;
        }

        if (invariant->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::Distribution mu0 = parse_mu0(mu0_spec, kf.kernel.n_states());
            nlmc::FixedPointResult fp = nlmc::find_invariant(kf.kernel, mu0, tol, max_iter);
            nlmc::CsvWriter csv;
            csv.config("command", "invariant");
            csv.config("kernel", kernel_path);
            csv.config("mu0", mu0_spec);
            csv.config("tol", tol);
            csv.config("max_iter", max_iter);
            echo_env(csv);
            csv.config("iterations", fp.iterations);
            csv.config("residual", fp.residual);
            csv.config("converged", fp.converged ? "true" : "false");
            csv.columns({"state", "probability"});
            for (std::size_t i = 0; i < fp.pi.size(); ++i)
                csv.row({kf.states[i], nlmc::format_double(fp.pi[i])});
            emit(output, csv.str());
            return kExitOk;
        }

        if (bound->parsed()) {
            nlmc::BoundParams params;
            try {
                params = nlmc::BoundParams::make(k, alpha, lambda_k, lambda_1, initial_tv,
                                                 search.tie_tol);
            } catch (const std::exception& e) {
                std::cerr << e.what() << "\n";
                return kExitValidation;
            }
            if (params.regime == nlmc::Regime::inconclusive) {
                std::cerr << "regime inconclusive, no bound available: with lambda > alpha there "
                             "may be either an infinite number of invariant measures or no "
                             "invariant measure at all\n";
                return kExitInconclusive;
            }
            nlmc::BoundCurve curve = nlmc::bound_curve(params, n_max);
            nlmc::CsvWriter csv;
            csv.config("command", "bound");
            csv.config("k", k);
            csv.config("alpha", alpha);
            csv.config("lambda_k", lambda_k);
            csv.config("lambda_1", lambda_1);
            csv.config("initial_tv", initial_tv);
            csv.config("n_max", n_max);
            csv.config("tie_tol", search.tie_tol);
            csv.config("regime", std::string(nlmc::to_string(params.regime)));
            csv.columns({"n", "bound"});
            for (const auto& [n, b] : curve.values)
                csv.row({std::to_string(n), nlmc::format_double(b)});
            emit(output, csv.str());
            return kExitOk;
        }

        if (simulate->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::Distribution mu0 = parse_mu0(mu0_spec, kf.kernel.n_states());
            nlmc::Trajectory traj = nlmc::simulate_path(kf.kernel, mu0, n_steps, search.seed);
            nlmc::CsvWriter csv;
            csv.config("command", "simulate");
            csv.config("kernel", kernel_path);
            csv.config("mu0", mu0_spec);
            csv.config("n", n_steps);
            csv.config("seed", search.seed);
            echo_env(csv);
            csv.columns({"t", "state"});
            for (std::size_t t = 0; t < traj.states.size(); ++t)
                csv.row({std::to_string(t), kf.states[static_cast<std::size_t>(traj.states[t])]});
            emit(output, csv.str());
            return kExitOk;
        }

        if (lln->parsed()) {
            nlmc::KernelFile kf = load_or_die(kernel_path);
            nlmc::Distribution mu0 = parse_mu0(mu0_spec, kf.kernel.n_states());
            std::vector<double> g = parse_observable(g_spec, kf.kernel.n_states());
            nlmc::CsvWriter csv;
            csv.config("command", "lln");
            csv.config("kernel", kernel_path);
            csv.config("mu0", mu0_spec);
            csv.config("g", g_spec);
            csv.config("paths", paths);
            csv.config("seed", search.seed);
            echo_env(csv);
            if (!n_list.empty()) {
                std::string joined;
                for (std::size_t i = 0; i < n_list.size(); ++i)
                    joined += (i ? "," : "") + std::to_string(n_list[i]);
                csv.config("n_list", joined);
                auto rows = nlmc::lln_convergence_table(kf.kernel, mu0, g, n_list, paths,
                                                        search.seed, std::nullopt, threads);
                csv.columns({"n", "abs_error", "sample_std"});
                for (const auto& r : rows)
                    csv.row({std::to_string(r.n), nlmc::format_double(r.abs_error),
                             nlmc::format_double(r.sample_std)});
            } else {
                nlmc::LLNReport report = nlmc::lln_experiment(kf.kernel, mu0, g, n_steps, paths,
                                                              search.seed, std::nullopt, threads);
                nlmc::lln_report_csv(csv, report);
            }
            emit(output, csv.str());
            return kExitOk;
        }

        if (example->parsed()) {
            nlmc::ExampleChain chain = nlmc::build_example(gamma);
            emit(output, nlmc::kernel_to_json(chain.kernel, {"1", "2", "3", "4"}));
            return kExitOk;
        }

        if (table1->parsed()) {
            nlmc::Table1 table =
                nlmc::table1(search.resolution, search.samples, search.seed, threads);
            nlmc::CsvWriter csv;
            csv.config("command", "table1");
            csv.config("resolution", search.resolution);
            csv.config("samples", search.samples);
            csv.config("seed", search.seed);
            echo_env(csv);
            for (const auto& r : table.rows)
                csv.config("k" + std::to_string(r.k) + "_gamma" + nlmc::format_double(r.gamma),
                           "alpha=" + nlmc::format_double(r.alpha_k) +
                               " lambda=" + nlmc::format_double(r.lambda_k));
            csv.columns({"gamma", "k2", "k3"});
            for (double g : {0.0, 0.5}) {
                std::vector<std::string> cells{nlmc::format_double(g)};
                for (int kk : {2, 3})
                    for (const auto& r : table.rows)
                        if (r.k == kk && r.gamma == g) cells.push_back(nlmc::format_double(r.rate));
                csv.row(cells);
            }
            emit(output, csv.str());
            return kExitOk;
        }
    } catch (const CliError& e) {
        std::cerr << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}
