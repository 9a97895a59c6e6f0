// pseudonorm: resolvent-norm toolkit for 1-D Schrodinger operators with
// complex potentials. Batch interface: parameter sweeps comparing the direct
// numerical engine against the closed-form estimates, level-curve emission,
// Airy reference constants, the inverse rate-to-potential construction, and a
// verification harness.

#include <CLI11.hpp>

#include <atomic>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "pseudonorm/asymptotics.hpp"
#include "pseudonorm/inverse.hpp"
#include "pseudonorm/scenarios.hpp"
#include "pseudonorm/table_io.hpp"

namespace pn = pseudonorm;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GridSpec {
    double start = 10.0;
    double stop = 1000.0;
    std::size_t count = 5;
    bool log_spaced = true;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw pn::config_error("grid must be start:stop:count:log|lin");
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.count = static_cast<std::size_t>(std::stoul(parts[2]));
    } catch (...) {
        throw pn::config_error("grid: cannot parse numbers in '" + text + "'");
    }
    if (parts[3] == "log")
        g.log_spaced = true;
    else if (parts[3] == "lin")
        g.log_spaced = false;
    else
        throw pn::config_error("grid spacing must be 'log' or 'lin'");
    if (g.count < 1) throw pn::config_error("grid count must be >= 1");
    if (g.count > 1 && !(g.start < g.stop))
        throw pn::config_error("grid needs start < stop");
    return g;
}

std::vector<double> grid_values(const GridSpec& g) {
    if (g.count == 1) return {g.start};
    return g.log_spaced ? pn::log_grid(g.start, g.stop, g.count)
                        : pn::linear_grid(g.start, g.stop, g.count);
}

pn::stencil_kind parse_stencil(const std::string& s) {
    if (s == "fd2") return pn::stencil_kind::fd2;
    if (s == "fd4") return pn::stencil_kind::fd4;
    throw pn::config_error("stencil must be fd2 or fd4");
}

pn::curve_axis parse_axis(const std::string& s) {
    if (s == "imag") return pn::curve_axis::imag;
    if (s == "real") return pn::curve_axis::real;
    throw pn::config_error("axis must be imag or real");
}

// Every command-line field is overridable from a single JSON config file;
// explicit flags win over config values.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw pn::config_error("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw pn::config_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw pn::config_error("config must be a JSON object");
    return j;
}

template <typename T>
void apply_config(const CLI::App& app, const std::string& flag, const json& cfg,
                  const std::string& key, T& var) {
    if (!cfg.contains(key)) return;
    const auto* opt = app.get_option_no_throw(flag);
    if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
    try {
        var = cfg.at(key).get<T>();
    } catch (const std::exception& e) {
        throw pn::config_error("config field '" + key + "': " + e.what());
    }
}

void emit(const pn::SweepTable& table, const std::string& format, const std::string& out_path) {
    if (out_path.empty())
        std::cout << (format == "json" ? table.json_text() : table.csv());
    else
        table.write(out_path, format);
}

json effective_config(std::initializer_list<std::pair<const char*, json>> kv) {
    json j = json::object();
    for (const auto& [k, v] : kv) j[k] = v;
    return j;
}

std::vector<std::string> sweep_columns() {
    return {"param",   "lambda_re",       "lambda_im", "numeric", "asym", "ratio",
            "remainder_scale", "phi", "converged", "est_rel_error", "error"};
}

// Rate registry for the inverse pipeline: "power:alpha=<a>" for <y>^a,
// "exp:alpha=<a>" for exp(y^a), "log" for log(e + y).
pn::RateFunction make_rate(const std::string& spec) {
    double val = 0.0;
    auto starts = [&spec](const char* p) { return spec.rfind(p, 0) == 0; };
    if (starts("power:alpha=")) {
        val = std::stod(spec.substr(12));
        pn::RateFunction r;
        r.r = [a = val](double y) { return std::pow(1.0 + y * y, a / 2.0); };
        r.dr = [a = val](double y) { return a * y * std::pow(1.0 + y * y, a / 2.0 - 1.0); };
        r.label = spec;
        return r;
    }
    if (starts("exp:alpha=")) {
        val = std::stod(spec.substr(10));
        pn::RateFunction r;
        r.r = [a = val](double y) { return std::exp(std::pow(y, a)); };
        r.label = spec;
        return r;
    }
    if (spec == "log") {
        pn::RateFunction r;
        r.r = [](double y) { return std::log(std::exp(1.0) + y); };
        r.dr = [](double y) { return 1.0 / (std::exp(1.0) + y); };
        r.label = spec;
        return r;
    }
    throw pn::config_error("unknown rate spec '" + spec + "' (power:alpha=, exp:alpha=, log)");
}

struct SweepArgs {
    std::string potential;
    std::string axis = "imag";
    std::string mode = "both";
    std::string grid = "10:1000:5:log";
    std::string curve;
    std::string stencil = "fd2";
    double tol = 1e-3;
    std::string format = "csv";
    std::string out;
    int jobs = 1;
    bool force = false;
};

json sweep_row(const SweepArgs& args, const pn::PotentialModel& V, const pn::CurveExpr& curve,
               pn::curve_axis axis, double p) {
    json row;
    row["param"] = p;
    try {
        const double offset = curve(p);
        const pn::cplx lambda = axis == pn::curve_axis::imag ? pn::cplx(offset, p)
                                                             : pn::cplx(p, offset);
        row["lambda_re"] = std::real(lambda);
        row["lambda_im"] = std::imag(lambda);

        std::optional<double> numeric, asym;
        if (args.mode == "norm" || args.mode == "both") {
            auto d0 = pn::auto_discretization(V, lambda, parse_stencil(args.stencil));
            auto res = pn::resolvent_norm_numeric(V, lambda, args.tol, d0);
            numeric = res.value;
            row["numeric"] = res.value;
            row["converged"] = res.converged;
            row["est_rel_error"] = res.est_rel_error;
        }
        if (args.mode == "asym" || args.mode == "both") {
            pn::AsymOptions opt{args.force, 2e-4, 0.0};
            pn::AsymEstimate est;
            const bool flat = curve.c == 0.0;
            if (!flat) {
                pn::CurveSpec spec{axis, [&curve](double q) { return curve(q); }, p, p};
                est = pn::resnorm_curve(V, spec, p, opt);
            } else if (axis == pn::curve_axis::imag) {
                est = V.domain == pn::domain_kind::full_line
                          ? pn::resnorm_wholeline(V, p, +1, opt)
                          : pn::resnorm_iR(V, p, opt);
            } else {
                est = pn::resnorm_R(V, p, opt);
            }
            asym = est.value;
            row["asym"] = est.value;
            row["remainder_scale"] = est.remainder_scale;
            if (est.validity.phi) row["phi"] = *est.validity.phi;
        }
        if (numeric && asym) row["ratio"] = *numeric / *asym;
    } catch (const std::exception& e) {
        row["error"] = std::string(e.what());
    }
    return row;
}

int run_sweep(const SweepArgs& args) {
    auto V = pn::make_potential(args.potential);
    const auto axis = parse_axis(args.axis);
    const auto curve = args.curve.empty() ? pn::CurveExpr{} : pn::parse_curve_expr(args.curve);
    const auto params = grid_values(parse_grid(args.grid));

    pn::SweepTable table;
    table.meta = {std::string("pseudonorm ") + kVersion,
                  "config " + effective_config({{"potential", args.potential},
                                                {"axis", args.axis},
                                                {"mode", args.mode},
                                                {"grid", args.grid},
                                                {"curve", args.curve},
                                                {"stencil", args.stencil},
                                                {"tol", args.tol}})
                                 .dump()};
    table.columns = sweep_columns();
    table.rows.resize(params.size());

    const int jobs = std::max(1, args.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= params.size()) break;
            table.rows[i] = sweep_row(args, V, curve, axis, params[i]);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    emit(table, args.format, args.out);
    return 0;  // row-level errors are recorded in the error column
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resolvent-norm estimates for 1-D Schrodinger operators with complex "
                 "potentials"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string cache_path;
    app.add_option("--cache", cache_path,
                   "Airy norm cache file (default: PSEUDONORM_CACHE env)");

    // ---- norm ----------------------------------------------------------
    auto* norm_cmd = app.add_subcommand("norm", "direct numerical resolvent norm at one lambda");
    struct {
        std::string potential, stencil = "fd2", format = "csv", out, config;
        double re = 0.0, im = 0.0, tol = 1e-3, L = 0.0;
        int N = 0;
    } norm_args;
    norm_cmd->add_option("--potential", norm_args.potential, "potential spec");
    norm_cmd->add_option("--re", norm_args.re, "Re lambda");
    norm_cmd->add_option("--im", norm_args.im, "Im lambda");
    norm_cmd->add_option("--tol", norm_args.tol, "refinement tolerance");
    norm_cmd->add_option("--stencil", norm_args.stencil, "fd2|fd4");
    norm_cmd->add_option("--L", norm_args.L, "truncation half-width (0 = automatic)");
    norm_cmd->add_option("--N", norm_args.N, "grid points (0 = automatic)");
    norm_cmd->add_option("--format", norm_args.format, "csv|json");
    norm_cmd->add_option("--out", norm_args.out, "output path (default stdout)");
    norm_cmd->add_option("--config", norm_args.config, "JSON config file");

    // ---- asym ----------------------------------------------------------
    auto* asym_cmd = app.add_subcommand("asym", "closed-form estimate at one parameter");
    struct {
        std::string potential, axis = "imag", curve, format = "csv", out, config;
        double param = 100.0;
        bool force = false;
    } asym_args;
    asym_cmd->add_option("--potential", asym_args.potential, "potential spec");
    asym_cmd->add_option("--axis", asym_args.axis, "imag|real");
    asym_cmd->add_option("--param", asym_args.param, "b (imag) or a (real)");
    asym_cmd->add_option("--curve", asym_args.curve, "offset expression c*param^q*(log(param))^s");
    asym_cmd->add_flag("--force", asym_args.force, "skip the assumption gate");
    asym_cmd->add_option("--format", asym_args.format, "csv|json");
    asym_cmd->add_option("--out", asym_args.out, "output path");
    asym_cmd->add_option("--config", asym_args.config, "JSON config file");

    // ---- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep (numeric and/or asymptotic)");
    SweepArgs sweep_args;
    std::string sweep_config;
    sweep_cmd->add_option("--potential", sweep_args.potential, "potential spec");
    sweep_cmd->add_option("--axis", sweep_args.axis, "imag|real");
    sweep_cmd->add_option("--mode", sweep_args.mode, "norm|asym|both");
    sweep_cmd->add_option("--grid", sweep_args.grid, "start:stop:count:log|lin");
    sweep_cmd->add_option("--curve", sweep_args.curve, "offset expression");
    sweep_cmd->add_option("--stencil", sweep_args.stencil, "fd2|fd4");
    sweep_cmd->add_option("--tol", sweep_args.tol, "numeric tolerance");
    sweep_cmd->add_option("--format", sweep_args.format, "csv|json");
    sweep_cmd->add_option("--out", sweep_args.out, "output path");
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "concurrent rows");
    sweep_cmd->add_flag("--force", sweep_args.force, "skip assumption gates");
    sweep_cmd->add_option("--config", sweep_config, "JSON config file");

    // ---- levels --------------------------------------------------------
    auto* levels_cmd = app.add_subcommand("levels", "level curves and critical boundaries");
    struct {
        std::string potential, axis = "imag", grid = "10:1000000:25:log", format = "csv", out,
                                config;
        double eps = 0.1, eps_prime = 0.1;
    } levels_args;
    levels_cmd->add_option("--potential", levels_args.potential, "potential spec");
    levels_cmd->add_option("--axis", levels_args.axis, "imag|real");
    levels_cmd->add_option("--grid", levels_args.grid, "start:stop:count:log|lin");
    levels_cmd->add_option("--eps", levels_args.eps, "level 1/eps");
    levels_cmd->add_option("--eps-prime", levels_args.eps_prime, "margin eps'");
    levels_cmd->add_option("--format", levels_args.format, "csv|json");
    levels_cmd->add_option("--out", levels_args.out, "output path");
    levels_cmd->add_option("--config", levels_args.config, "JSON config file");

    // ---- airy ----------------------------------------------------------
    auto* airy_cmd = app.add_subcommand("airy", "reference operator norms");
    struct {
        std::string kind = "rotated", format = "csv", out, config;
        double r = 1.0, theta = pn::kPi / 2, beta = 2.0, mu = 0.0, tol = 2e-4;
        bool with_asym = false;
    } airy_args;
    airy_cmd->add_option("--kind", airy_args.kind, "rotated|generalized");
    airy_cmd->add_option("--r", airy_args.r, "rotation modulus r > 0");
    airy_cmd->add_option("--theta", airy_args.theta, "rotation angle in (-pi, pi)");
    airy_cmd->add_option("--beta", airy_args.beta, "first-order exponent beta > 0");
    airy_cmd->add_option("--mu", airy_args.mu, "real shift mu >= 0");
    airy_cmd->add_option("--tol", airy_args.tol, "numeric tolerance");
    airy_cmd->add_flag("--asym", airy_args.with_asym, "include the closed-form column (mu > 0)");
    airy_cmd->add_option("--format", airy_args.format, "csv|json");
    airy_cmd->add_option("--out", airy_args.out, "output path");
    airy_cmd->add_option("--config", airy_args.config, "JSON config file");

    // ---- inverse -------------------------------------------------------
    auto* inv_cmd = app.add_subcommand("inverse", "construct V2 from a prescribed rate");
    struct {
        std::string rate = "power:alpha=1", out = "v2_table.csv", verify_grid, format = "csv",
                    config;
        double x_max = 1e6, gate_horizon = 1e6;
        bool force = false;
    } inv_args;
    inv_cmd->add_option("--rate", inv_args.rate, "rate spec (power:alpha=, exp:alpha=, log)");
    inv_cmd->add_option("--x-max", inv_args.x_max, "table extends to this position");
    inv_cmd->add_option("--out", inv_args.out, "table CSV path");
    inv_cmd->add_option("--verify-grid", inv_args.verify_grid,
                        "b grid start:stop:count:log|lin for verify_rate");
    inv_cmd->add_option("--gate-horizon", inv_args.gate_horizon,
                        "horizon for the rate-condition gate (shrink for exponential rates)");
    inv_cmd->add_flag("--force", inv_args.force, "skip the rate-condition gate");
    inv_cmd->add_option("--format", inv_args.format, "csv|json (verification table)");
    inv_cmd->add_option("--config", inv_args.config, "JSON config file");

    // ---- verify --------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "run named verification scenarios");
    struct {
        std::string scenario = "all", out = "fig1_data", potential, axis = "imag",
                    grid = "100:10000:3:log", stencil = "fd2";
        double band = 0.15, tol = 1e-3;
    } verify_args;
    verify_cmd->add_option("--scenario", verify_args.scenario, "scenario name or 'all'");
    verify_cmd->add_option("--out", verify_args.out, "output directory for data files");
    verify_cmd->add_option("--potential", verify_args.potential,
                           "compare numeric vs asymptotic for this potential instead of a "
                           "named scenario");
    verify_cmd->add_option("--axis", verify_args.axis, "imag|real (sweep comparison)");
    verify_cmd->add_option("--grid", verify_args.grid, "parameter grid (sweep comparison)");
    verify_cmd->add_option("--stencil", verify_args.stencil, "fd2|fd4 (sweep comparison)");
    verify_cmd->add_option("--band", verify_args.band, "relative pass band on |ratio - 1|");
    verify_cmd->add_option("--tol", verify_args.tol, "numeric tolerance (sweep comparison)");

    // ---- check ---------------------------------------------------------
    auto* check_cmd = app.add_subcommand("check", "assumption report for a potential");
    struct {
        std::string potential, mode = "iR", format = "csv", out, config;
        double horizon = 1e8;
    } check_args;
    check_cmd->add_option("--potential", check_args.potential, "potential spec");
    check_cmd->add_option("--mode", check_args.mode, "iR|R");
    check_cmd->add_option("--horizon", check_args.horizon, "sampling horizon");
    check_cmd->add_option("--format", check_args.format, "csv|json");
    check_cmd->add_option("--out", check_args.out, "output path");
    check_cmd->add_option("--config", check_args.config, "JSON config file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!cache_path.empty()) pn::set_airy_cache_path(cache_path);

        if (*norm_cmd) {
            auto cfg = load_config(norm_args.config);
            apply_config(*norm_cmd, "--potential", cfg, "potential", norm_args.potential);
            apply_config(*norm_cmd, "--re", cfg, "re", norm_args.re);
            apply_config(*norm_cmd, "--im", cfg, "im", norm_args.im);
            apply_config(*norm_cmd, "--tol", cfg, "tol", norm_args.tol);
            apply_config(*norm_cmd, "--stencil", cfg, "stencil", norm_args.stencil);
            apply_config(*norm_cmd, "--format", cfg, "format", norm_args.format);
            apply_config(*norm_cmd, "--out", cfg, "out", norm_args.out);
            if (norm_args.potential.empty()) throw pn::config_error("norm: --potential required");

            auto V = pn::make_potential(norm_args.potential);
            const pn::cplx lambda(norm_args.re, norm_args.im);
            pn::Discretization d = pn::auto_discretization(V, lambda,
                                                           parse_stencil(norm_args.stencil));
            if (norm_args.L > 0.0) d.L = norm_args.L;
            if (norm_args.N > 0) d.N = norm_args.N;
            auto res = pn::resolvent_norm_numeric(V, lambda, norm_args.tol, d);

            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion};
            t.columns = {"lambda_re", "lambda_im", "value", "converged", "est_rel_error",
                         "evaluations"};
            json row;
            row["lambda_re"] = norm_args.re;
            row["lambda_im"] = norm_args.im;
            row["value"] = res.value;
            row["converged"] = res.converged;
            row["est_rel_error"] = res.est_rel_error;
            row["evaluations"] = static_cast<long long>(res.grid_history.size());
            json hist = json::array();
            for (const auto& [L, N, v] : res.grid_history) hist.push_back({L, N, v});
            row["grid_history"] = hist;
            t.rows.push_back(row);
            emit(t, norm_args.format, norm_args.out);
            return 0;
        }

        if (*asym_cmd) {
            auto cfg = load_config(asym_args.config);
            apply_config(*asym_cmd, "--potential", cfg, "potential", asym_args.potential);
            apply_config(*asym_cmd, "--axis", cfg, "axis", asym_args.axis);
            apply_config(*asym_cmd, "--param", cfg, "param", asym_args.param);
            apply_config(*asym_cmd, "--curve", cfg, "curve", asym_args.curve);
            apply_config(*asym_cmd, "--format", cfg, "format", asym_args.format);
            apply_config(*asym_cmd, "--out", cfg, "out", asym_args.out);
            if (asym_args.potential.empty()) throw pn::config_error("asym: --potential required");

            SweepArgs one;
            one.potential = asym_args.potential;
            one.axis = asym_args.axis;
            one.mode = "asym";
            one.curve = asym_args.curve;
            one.force = asym_args.force;
            auto V = pn::make_potential(one.potential);
            const auto curve = one.curve.empty() ? pn::CurveExpr{}
                                                 : pn::parse_curve_expr(one.curve);
            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion};
            t.columns = sweep_columns();
            t.rows.push_back(sweep_row(one, V, curve, parse_axis(one.axis), asym_args.param));
            emit(t, asym_args.format, asym_args.out);
            return 0;
        }

        if (*sweep_cmd) {
            auto cfg = load_config(sweep_config);
            apply_config(*sweep_cmd, "--potential", cfg, "potential", sweep_args.potential);
            apply_config(*sweep_cmd, "--axis", cfg, "axis", sweep_args.axis);
            apply_config(*sweep_cmd, "--mode", cfg, "mode", sweep_args.mode);
            apply_config(*sweep_cmd, "--grid", cfg, "grid", sweep_args.grid);
            apply_config(*sweep_cmd, "--curve", cfg, "curve", sweep_args.curve);
            apply_config(*sweep_cmd, "--stencil", cfg, "stencil", sweep_args.stencil);
            apply_config(*sweep_cmd, "--tol", cfg, "tol", sweep_args.tol);
            apply_config(*sweep_cmd, "--format", cfg, "format", sweep_args.format);
            apply_config(*sweep_cmd, "--out", cfg, "out", sweep_args.out);
            apply_config(*sweep_cmd, "--jobs", cfg, "jobs", sweep_args.jobs);
            if (sweep_args.potential.empty()) throw pn::config_error("sweep: --potential required");
            if (sweep_args.mode != "norm" && sweep_args.mode != "asym" &&
                sweep_args.mode != "both")
                throw pn::config_error("sweep: mode must be norm|asym|both");
            return run_sweep(sweep_args);
        }

        if (*levels_cmd) {
            auto cfg = load_config(levels_args.config);
            apply_config(*levels_cmd, "--potential", cfg, "potential", levels_args.potential);
            apply_config(*levels_cmd, "--axis", cfg, "axis", levels_args.axis);
            apply_config(*levels_cmd, "--grid", cfg, "grid", levels_args.grid);
            apply_config(*levels_cmd, "--eps", cfg, "eps", levels_args.eps);
            apply_config(*levels_cmd, "--eps-prime", cfg, "eps_prime", levels_args.eps_prime);
            apply_config(*levels_cmd, "--format", cfg, "format", levels_args.format);
            apply_config(*levels_cmd, "--out", cfg, "out", levels_args.out);
            if (levels_args.potential.empty())
                throw pn::config_error("levels: --potential required");

            auto V = pn::make_potential(levels_args.potential);
            const auto axis = parse_axis(levels_args.axis);
            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion,
                      "config " + effective_config({{"potential", levels_args.potential},
                                                    {"axis", levels_args.axis},
                                                    {"eps", levels_args.eps},
                                                    {"eps_prime", levels_args.eps_prime},
                                                    {"grid", levels_args.grid}})
                                     .dump()};
            t.columns = {"param", "level_offset", "critical_offset", "critical_clamped", "error"};
            for (double p : grid_values(parse_grid(levels_args.grid))) {
                json row;
                row["param"] = p;
                try {
                    row["level_offset"] = pn::level_curve(V, axis, levels_args.eps, p);
                } catch (const std::exception& e) {
                    row["error"] = std::string(e.what());
                }
                try {
                    auto cb = pn::critical_boundary(V, axis, levels_args.eps,
                                                    levels_args.eps_prime, p, {true, 2e-4, 0.0});
                    row["critical_offset"] = cb.offset;
                    row["critical_clamped"] = cb.clamped;
                } catch (const std::exception& e) {
                    row["error"] = std::string(e.what());
                }
                t.rows.push_back(row);
            }
            emit(t, levels_args.format, levels_args.out);
            return 0;
        }

        if (*airy_cmd) {
            auto cfg = load_config(airy_args.config);
            apply_config(*airy_cmd, "--kind", cfg, "kind", airy_args.kind);
            apply_config(*airy_cmd, "--r", cfg, "r", airy_args.r);
            apply_config(*airy_cmd, "--theta", cfg, "theta", airy_args.theta);
            apply_config(*airy_cmd, "--beta", cfg, "beta", airy_args.beta);
            apply_config(*airy_cmd, "--mu", cfg, "mu", airy_args.mu);
            apply_config(*airy_cmd, "--tol", cfg, "tol", airy_args.tol);

            pn::AiryQuery q;
            q.kind = airy_args.kind == "generalized" ? pn::airy_kind::generalized_first_order
                                                     : pn::airy_kind::rotated_second_order;
            q.r = airy_args.r;
            q.theta = airy_args.theta;
            q.beta = airy_args.beta;
            q.mu = airy_args.mu;
            q.tol = airy_args.tol;
            auto res = pn::airy_norm(q);

            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion};
            t.columns = {"kind", "r", "theta", "beta", "mu", "value", "asym", "converged"};
            json row;
            row["kind"] = airy_args.kind;
            row["r"] = q.r;
            row["theta"] = q.theta;
            row["beta"] = q.beta;
            row["mu"] = q.mu;
            row["value"] = res.value;
            if (airy_args.with_asym && q.mu > 0.0) row["asym"] = pn::airy_norm_asym(q);
            row["converged"] = res.converged;
            t.rows.push_back(row);
            emit(t, airy_args.format, airy_args.out);
            return 0;
        }

        if (*inv_cmd) {
            auto cfg = load_config(inv_args.config);
            apply_config(*inv_cmd, "--rate", cfg, "rate", inv_args.rate);
            apply_config(*inv_cmd, "--x-max", cfg, "x_max", inv_args.x_max);
            apply_config(*inv_cmd, "--out", cfg, "out", inv_args.out);
            apply_config(*inv_cmd, "--verify-grid", cfg, "verify_grid", inv_args.verify_grid);
            apply_config(*inv_cmd, "--gate-horizon", cfg, "gate_horizon", inv_args.gate_horizon);

            auto rate = make_rate(inv_args.rate);
            pn::InverseOptions opt;
            opt.force = inv_args.force;
            opt.gate_horizon = inv_args.gate_horizon;
            auto inv = pn::potential_from_rate(rate, inv_args.x_max, opt);
            pn::export_table_csv(inv, inv_args.out);

            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion, "rate " + inv_args.rate,
                      "table " + inv_args.out,
                      "airy_constant " + pn::format_number(inv.airy_constant_used)};
            t.columns = {"b", "x_b", "ratio"};
            if (!inv_args.verify_grid.empty()) {
                auto bg = grid_values(parse_grid(inv_args.verify_grid));
                for (const auto& row : pn::verify_rate(inv, rate, bg)) {
                    json j;
                    j["b"] = row.b;
                    j["x_b"] = row.x_b;
                    j["ratio"] = row.ratio;
                    t.rows.push_back(j);
                }
            }
            emit(t, inv_args.format, "");
            return 0;
        }

        if (*verify_cmd && !verify_args.potential.empty()) {
            // sweep-pair comparison: both engines over the grid; every point
            // must sit inside the band and the ratios must approach 1
            auto V = pn::make_potential(verify_args.potential);
            const auto axis = parse_axis(verify_args.axis);
            const auto params = grid_values(parse_grid(verify_args.grid));
            if (!(verify_args.band > 0.0 && verify_args.band < 1.0))
                throw pn::config_error("verify: band must lie in (0, 1)");

            int failures = 0;
            double first_dev = -1.0, last_dev = -1.0;
            for (double p : params) {
                SweepArgs one;
                one.potential = verify_args.potential;
                one.axis = verify_args.axis;
                one.mode = "both";
                one.stencil = verify_args.stencil;
                one.tol = verify_args.tol;
                one.force = true;
                json row = sweep_row(one, V, pn::CurveExpr{}, axis, p);
                if (!row.contains("ratio")) {
                    std::printf("[FAIL] param=%s: %s\n", pn::format_number(p).c_str(),
                                row.value("error", std::string("no ratio")).c_str());
                    ++failures;
                    continue;
                }
                const double dev = std::abs(row["ratio"].get<double>() - 1.0);
                const bool ok = dev <= verify_args.band;
                std::printf("[%s] param=%s ratio=%s band=[|ratio-1| <= %s]\n",
                            ok ? "PASS" : "FAIL", pn::format_number(p).c_str(),
                            pn::format_number(row["ratio"].get<double>()).c_str(),
                            pn::format_number(verify_args.band).c_str());
                if (!ok) ++failures;
                if (first_dev < 0.0) first_dev = dev;
                last_dev = dev;
            }
            const bool trend = params.size() < 2 || last_dev <= first_dev;
            std::printf("[%s] ratio trend approaches 1 across the grid\n",
                        trend ? "PASS" : "FAIL");
            if (!trend) ++failures;
            std::printf("%d check(s) failed\n", failures);
            return std::min(failures, 125);
        }

        if (*verify_cmd) {
            std::vector<std::string> names;
            if (verify_args.scenario == "all")
                names = pn::scenarios::scenario_names();
            else
                names.push_back(verify_args.scenario);

            int failures = 0;
            for (const auto& name : names) {
                auto checks = pn::scenarios::run_scenario(name, verify_args.out);
                for (const auto& c : checks) {
                    std::printf("[%s] %s: measured=%s band=[%s]\n", c.pass ? "PASS" : "FAIL",
                                c.name.c_str(), pn::format_number(c.measured).c_str(),
                                c.band.c_str());
                    if (!c.pass) ++failures;
                }
            }
            std::printf("%d check(s) failed\n", failures);
            return std::min(failures, 125);
        }

        if (*check_cmd) {
            auto cfg = load_config(check_args.config);
            apply_config(*check_cmd, "--potential", cfg, "potential", check_args.potential);
            apply_config(*check_cmd, "--mode", cfg, "mode", check_args.mode);
            apply_config(*check_cmd, "--horizon", cfg, "horizon", check_args.horizon);
            if (check_args.potential.empty())
                throw pn::config_error("check: --potential required");

            auto V = pn::make_potential(check_args.potential);
            const auto mode = check_args.mode == "R" ? pn::assumption_mode::R
                                                     : pn::assumption_mode::iR;
            auto rep = pn::check_assumptions(V, mode, check_args.horizon);

            pn::SweepTable t;
            t.meta = {std::string("pseudonorm ") + kVersion, "potential " + check_args.potential,
                      "mode " + check_args.mode, rep.grid_note};
            t.columns = {"item", "pass", "worst", "witness", "note"};
            for (const auto& it : rep.items) {
                json row;
                row["item"] = it.name;
                row["pass"] = it.pass;
                row["worst"] = it.worst;
                row["witness"] = it.witness;
                row["note"] = it.note;
                t.rows.push_back(row);
            }
            emit(t, check_args.format, check_args.out);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const pn::scenario_unknown_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const pn::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 64;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 70;
    }
    return 0;
}
