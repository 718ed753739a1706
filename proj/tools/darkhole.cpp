#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "darkhole/analysis.hpp"
#include "darkhole/cli_util.hpp"
#include "darkhole/crosscheck.hpp"
#include "darkhole/dynamics.hpp"
#include "darkhole/io_util.hpp"
#include "darkhole/liouvillian.hpp"
#include "darkhole/model.hpp"
#include "darkhole/spectra.hpp"
#include "darkhole/steadystate.hpp"

using nlohmann::json;
using namespace darkhole;

namespace {

struct CommonOpts {
    std::string config;
    std::string preset;
    std::vector<std::string> sets;
    bool as_json = false;
    int threads = 0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App *cmd, CommonOpts &opts, bool wants_params = true)
{
    if (wants_params) {
        cmd->add_option("config-path", opts.config,
                        "parameter file (key = value)");
        cmd->add_option("--config", opts.config, "parameter file");
        cmd->add_option("--preset", opts.preset, "scenario preset name");
        cmd->add_option("--set", opts.sets,
                        "override key=value, applied after file/preset load "
                        "(repeatable, last wins)");
    }
    cmd->add_flag("--json", opts.as_json, "machine-parseable summary");
    cmd->add_option("--threads", opts.threads,
                    "scan worker threads (default: all cores, or "
                    "DARKHOLE_THREADS)");
    cmd->add_option("--seed", opts.seed, "RNG seed for sampling commands");
}

SystemParams load_params(const CommonOpts &opts)
{
    SystemParams p;
    if (!opts.preset.empty())
        p = scenario_preset(opts.preset).params;
    else if (!opts.config.empty())
        p = parse_params_file(opts.config);
    else
        throw Error(ErrorCode::BAD_ARGUMENT,
                    "provide a config file or --preset");
    for (const auto &kv : opts.sets) {
        auto [key, value] = split_key_value(kv);
        apply_override(p, key, value);
    }
    return p;
}

int resolve_threads(const CommonOpts &opts)
{
    if (opts.threads > 0) return opts.threads;
    if (const char *env = std::getenv("DARKHOLE_THREADS"))
        if (int n = std::atoi(env); n > 0) return n;
    return 0; // library default: all cores
}

IntegrationPolicy policy_from(const std::string &method, double tol,
                              double step)
{
    IntegrationPolicy policy;
    if (method == "rk4")
        policy.method = IntegrationPolicy::Method::RK4_FIXED;
    else if (method == "rk45")
        policy.method = IntegrationPolicy::Method::RK45_ADAPTIVE;
    else
        throw Error(ErrorCode::BAD_ARGUMENT,
                    "method must be rk4 or rk45, got '" + method + "'");
    policy.tolerance = tol;
    policy.step = step;
    return policy;
}

json params_to_json(const SystemParams &p)
{
    return json{{"model_kind", to_string(p.model_kind)},
                {"rabi_alpha", format_complex(p.rabi_alpha)},
                {"rabi_beta", format_complex(p.rabi_beta)},
                {"detuning_alpha", p.detuning_alpha},
                {"detuning_beta", p.detuning_beta},
                {"gamma_ac", p.gamma_ac},
                {"gamma_bc", p.gamma_bc},
                {"shift_A", p.shift_A},
                {"shift_B", p.shift_B},
                {"shift_C", p.shift_C},
                {"chi", format_complex(p.chi)},
                {"reference_rate", p.reference_rate}};
}

void print_matrix(const Mat3 &m, std::ostream &os)
{
    char buf[160];
    for (int i = 0; i < 3; ++i) {
        os << "  ";
        for (int j = 0; j < 3; ++j) {
            std::snprintf(buf, sizeof(buf), "%+12.8f%+12.8fi  ",
                          m(i, j).real(), m(i, j).imag());
            os << buf;
        }
        os << "\n";
    }
}

json matrix_to_json(const Mat3 &m)
{
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j)
            row.push_back(format_complex(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

int cmd_preset(const std::string &action, const std::string &name,
               bool as_json)
{
    if (action == "list") {
        json out = json::array();
        if (!as_json)
            std::printf("%-16s %s\n", "name", "description");
        for (const auto &n : preset_names()) {
            ScenarioPreset p = scenario_preset(n);
            if (as_json)
                out.push_back({{"name", p.name},
                               {"description", p.description},
                               {"params", params_to_json(p.params)}});
            else
                std::printf("%-16s %s\n", p.name.c_str(),
                            p.description.c_str());
        }
        if (as_json) std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (action == "show") {
        ScenarioPreset p = scenario_preset(name);
        if (as_json) {
            json out{{"name", p.name},
                     {"description", p.description},
                     {"params", params_to_json(p.params)}};
            json feats = json::array();
            for (const auto &f : p.expected_features)
                feats.push_back({{"tag", f.tag},
                                 {"position", f.position},
                                 {"tolerance", f.tolerance}});
            out["expected_features"] = feats;
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "# " << p.description << "\n"
                      << serialize_params(p.params);
        }
        return 0;
    }
    throw Error(ErrorCode::BAD_ARGUMENT, "preset action must be list or show");
}

int cmd_spectrum(const CommonOpts &opts, const std::string &grid_spec,
                 const std::string &out_path, const std::string &plot_path,
                 double prominence, const IntegrationPolicy &policy)
{
    SystemParams p = load_params(opts);
    ValidatedParams vp = validate_params(p);
    std::vector<double> grid = parse_grid(grid_spec);

    SpectrumScan scan =
        scan_detuning(vp, grid, policy, resolve_threads(opts));
    double prom = prominence > 0.0 ? prominence : default_prominence(scan);
    if (prom > 0.0) scan.dips = find_dips(scan, prom);
    export_csv(scan, out_path);
    if (!plot_path.empty()) write_plot_script(out_path, plot_path);

    int exit_code = scan.all_converged() ? 0 : 2;
    if (opts.as_json) {
        json dips = json::array();
        for (const auto &d : scan.dips)
            dips.push_back({{"position", d.position},
                            {"depth", d.depth},
                            {"half_width", d.half_width},
                            {"classification", to_string(d.classification)}});
        json out{{"command", "spectrum"},
                 {"csv", out_path},
                 {"dips_csv", dips_csv_path(out_path)},
                 {"points", scan.points.size()},
                 {"prominence", prom},
                 {"dips", dips},
                 {"all_converged", scan.all_converged()},
                 {"exit_code", exit_code}};
        if (!plot_path.empty()) out["plot_script"] = plot_path;
        std::cout << out.dump(2) << "\n";
        return exit_code;
    }

    std::printf("scan: %zu points -> %s\n", scan.points.size(),
                out_path.c_str());
    if (scan.dips.empty()) {
        std::printf("no dips above prominence %.3g\n", prom);
    } else {
        std::printf("%-16s %12s %12s %12s\n", "classification", "position",
                    "depth", "half_width");
        for (const auto &d : scan.dips)
            std::printf("%-16s %12.5f %12.5g %12.5g\n",
                        to_string(d.classification), d.position, d.depth,
                        d.half_width);
    }
    if (exit_code == 2)
        std::fprintf(stderr,
                     "warning: NOT_CONVERGED points present (flagged in the "
                     "CSV)\n");
    return exit_code;
}

int cmd_evolve(const CommonOpts &opts, const std::string &rho0_spec,
               double tmax, const std::string &out_path, int stride,
               const IntegrationPolicy &base)
{
    SystemParams p = load_params(opts);
    ValidatedParams vp = validate_params(p);
    Liouvillian L = build_liouvillian(vp);
    DensityMatrix rho0 = rho0_from_spec(rho0_spec, p);

    IntegrationPolicy policy = base;
    policy.max_time = tmax;
    policy.record_stride = stride;
    Trajectory traj = integrate(rho0, L, policy);

    std::ostringstream os;
    write_trajectory_csv(traj, os);
    write_file_atomic(out_path, os.str());

    if (opts.as_json) {
        json out{{"command", "evolve"},
                 {"csv", out_path},
                 {"records", traj.times.size()},
                 {"max_trace_drift", traj.max_trace_drift},
                 {"max_herm_correction", traj.max_herm_correction},
                 {"min_eigenvalue", traj.min_recorded_eigenvalue},
                 {"final_state", matrix_to_json(traj.final_state())},
                 {"exit_code", 0}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::printf("evolved to t = %.6g (%zu records) -> %s\n", tmax,
                    traj.times.size(), out_path.c_str());
        std::printf("trace drift %.3g, hermiticity correction %.3g, min "
                    "eigenvalue %.3g\n",
                    traj.max_trace_drift, traj.max_herm_correction,
                    traj.min_recorded_eigenvalue);
    }
    return 0;
}

int cmd_steady(const CommonOpts &opts)
{
    SystemParams p = load_params(opts);
    ValidatedParams vp = validate_params(p);
    SteadyStateResult ss = steady_state_nullspace(build_liouvillian(vp));

    if (opts.as_json) {
        json out{{"command", "steady"},
                 {"degenerate", ss.degenerate()},
                 {"nullspace_dim", ss.nullspace_dim},
                 {"exit_code", 0}};
        if (!ss.degenerate()) {
            out["rho"] = matrix_to_json(ss.rho.m);
            out["residual"] = ss.residual;
            out["im_rho_AC"] = ss.rho.m(0, 2).imag();
            out["rho_CC"] = ss.rho.m(2, 2).real();
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (ss.degenerate()) {
        std::printf("DEGENERATE steady manifold, dimension %d\n",
                    ss.nullspace_dim);
        return 0;
    }
    std::printf("unique steady state (null-space residual %.3g):\n",
                ss.residual);
    print_matrix(ss.rho.m, std::cout);
    std::printf("rho_CC = %.10g, Im rho_AC = %.10g\n",
                ss.rho.m(2, 2).real(), ss.rho.m(0, 2).imag());
    if (vp.get().two_electron()) {
        HoleDistribution h = hole_population(ss.rho, vp->model_kind);
        std::printf("hole (a,b,c) = %.6f %.6f %.6f\n", h.p_hole_a, h.p_hole_b,
                    h.p_hole_c);
    }
    return 0;
}

int cmd_compare(const CommonOpts &opts)
{
    SystemParams p = load_params(opts);
    TrappingReport report = compare_v_lambda(validate_params(p));
    if (opts.as_json) {
        json out{{"command", "compare"},
                 {"f_v", report.f_v},
                 {"f_lambda", report.f_lambda},
                 {"trapping_ratio", report.trapping_ratio},
                 {"degenerate_v", report.degenerate_v},
                 {"degenerate_lambda", report.degenerate_lambda},
                 {"exit_code", 0}};
        if (!report.degenerate_lambda)
            out["hole"] = {report.lambda_hole.p_hole_a,
                           report.lambda_hole.p_hole_b,
                           report.lambda_hole.p_hole_c};
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << report.text();
    std::cout << "csv: " << TrappingReport::csv_header() << "\n"
              << "     " << report.csv_row() << "\n";
    return 0;
}

int cmd_crosscheck(const CommonOpts &opts, int samples)
{
    SystemParams p = load_params(opts);
    ValidatedParams vp = validate_params(p);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto random_state = [&]() {
        Mat3 g;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                g(i, j) = Complex(normal(rng), normal(rng));
        Mat3 m = g * g.adjoint();
        m /= m.trace().real();
        DensityMatrix rho;
        rho.m = m;
        return rho;
    };
    std::uniform_real_distribution<double> time_dist(0.0, 10.0);

    DiscrepancyReport total;
    for (int s = 0; s < samples; ++s) {
        DiscrepancyReport r =
            crosscheck_published_equations(vp, random_state(), time_dist(rng));
        total.merge(r);
    }
    if (samples == 0)
        total = DiscrepancyReport{}; // empty report, still prints

    if (opts.as_json) {
        json diffs = json::object();
        for (std::size_t k = 0; k < total.max_abs_diff.size(); ++k)
            diffs[DiscrepancyReport::entry_labels[k]] = total.max_abs_diff[k];
        json suspects = json::array();
        for (const auto &s : total.suspected)
            suspects.push_back({{"equation", s.equation},
                                {"printed", s.printed},
                                {"derived", s.derived}});
        json out{{"command", "crosscheck"},
                 {"samples", samples},
                 {"seed", opts.seed},
                 {"max_abs_diff", diffs},
                 {"suspected_terms", suspects},
                 {"exit_code", 0}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::printf("printed-equation vs derived-generator discrepancy over %d "
                "random states:\n",
                samples);
    for (std::size_t k = 0; k < total.max_abs_diff.size(); ++k)
        std::printf("  d rho_%s/dt : %.3e\n",
                    DiscrepancyReport::entry_labels[k], total.max_abs_diff[k]);
    if (!total.suspected.empty()) {
        std::printf("suspected misprints (printed -> derived):\n");
        for (const auto &s : total.suspected)
            std::printf("  Eq. (%s): %s  ->  %s\n", s.equation.c_str(),
                        s.printed.c_str(), s.derived.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{
        "darkhole: coherent population trapping in two-electron three-level "
        "ortho systems -- spectra, trajectories, steady states, and the "
        "V-versus-Lambda dark-hole contrast"};
    app.require_subcommand(1);

    // preset
    auto *preset = app.add_subcommand("preset", "list or show presets");
    std::string preset_action, preset_name;
    bool preset_json = false;
    preset->add_option("action", preset_action, "list | show")->required();
    preset->add_option("name", preset_name, "preset name (for show)");
    preset->add_flag("--json", preset_json);

    // spectrum
    auto *spectrum =
        app.add_subcommand("spectrum", "detuning scan of the absorption");
    CommonOpts spectrum_opts;
    add_common(spectrum, spectrum_opts);
    std::string grid_spec = "-1:1:401";
    std::string spectrum_out = "spectrum.csv";
    std::string plot_script;
    double prominence = 0.0;
    std::string spectrum_method = "rk45";
    double spectrum_tol = 1e-9, spectrum_step = 0.01;
    spectrum->add_option("--grid", grid_spec, "min:max:points");
    spectrum->add_option("--out", spectrum_out, "output CSV path");
    spectrum->add_option("--plot-script", plot_script,
                         "also emit a gnuplot script");
    spectrum->add_option("--prominence", prominence,
                         "dip prominence threshold (default: 5% of range)");
    spectrum->add_option("--method", spectrum_method, "rk45 | rk4");
    spectrum->add_option("--tol", spectrum_tol, "rk45 tolerance");
    spectrum->add_option("--step", spectrum_step, "rk4 step");

    // evolve
    auto *evolve = app.add_subcommand("evolve", "integrate one trajectory");
    CommonOpts evolve_opts;
    add_common(evolve, evolve_opts);
    std::string rho0_spec = "mixed";
    double tmax = 100.0;
    std::string evolve_out = "trajectory.csv";
    int stride = 1;
    std::string evolve_method = "rk45";
    double evolve_tol = 1e-9, evolve_step = 0.01;
    evolve->add_option("--rho0", rho0_spec,
                       "mixed | ground | C | D | matrix file");
    evolve->add_option("--tmax", tmax, "integration end time");
    evolve->add_option("--out", evolve_out, "output CSV path");
    evolve->add_option("--stride", stride, "record every n-th step");
    evolve->add_option("--method", evolve_method, "rk45 | rk4");
    evolve->add_option("--tol", evolve_tol, "rk45 tolerance");
    evolve->add_option("--step", evolve_step, "rk4 step");

    // steady
    auto *steady = app.add_subcommand("steady", "null-space steady state");
    CommonOpts steady_opts;
    add_common(steady, steady_opts);

    // compare
    auto *compare =
        app.add_subcommand("compare", "V versus Lambda trapping contrast");
    CommonOpts compare_opts;
    add_common(compare, compare_opts);

    // crosscheck
    auto *crosscheck = app.add_subcommand(
        "crosscheck", "printed equations versus derived generator");
    CommonOpts crosscheck_opts;
    add_common(crosscheck, crosscheck_opts);
    int samples = 100;
    crosscheck->add_option("--samples", samples, "number of random states");

    CLI11_PARSE(app, argc, argv);

    try {
        if (preset->parsed())
            return cmd_preset(preset_action, preset_name, preset_json);
        if (spectrum->parsed())
            return cmd_spectrum(
                spectrum_opts, grid_spec, spectrum_out, plot_script,
                prominence,
                policy_from(spectrum_method, spectrum_tol, spectrum_step));
        if (evolve->parsed())
            return cmd_evolve(evolve_opts, rho0_spec, tmax, evolve_out, stride,
                              policy_from(evolve_method, evolve_tol,
                                          evolve_step));
        if (steady->parsed()) return cmd_steady(steady_opts);
        if (compare->parsed()) return cmd_compare(compare_opts);
        if (crosscheck->parsed())
            return cmd_crosscheck(crosscheck_opts, samples);
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
