// covq command-line front end: single coverage/quantization evaluations,
// benchmark-table reproduction, and curve/tuning sweeps with CSV output and
// reproducible run manifests.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covq/approx.hpp"
#include "covq/csv.hpp"
#include "covq/designs.hpp"
#include "covq/montecarlo.hpp"
#include "covq/parallel.hpp"
#include "covq/quantize.hpp"
#include "covq/simplexlab.hpp"
#include "covq/tables.hpp"
#include "covq/tuner.hpp"
#include "covq/version.hpp"

namespace {

using json = nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct CommonFlags {
    std::string family = "design2a";
    int d = 10;
    long long n = 512;
    double delta = 0.5;
    double alpha = 1.0;
    int k = -1;
    long long samples = 100000;
    std::uint64_t seed = 0;
    int reps = 40;
    int threads = 0;
    bool paper_budget = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_design = true) {
    if (with_design) {
        cmd->add_option("--family", f.family,
                        "design1|design2a|design2b|design3|design4|simplex-s1|simplex-s2");
        cmd->add_option("--d", f.d, "dimension");
        cmd->add_option("--n", f.n, "number of design points");
        cmd->add_option("--delta", f.delta, "scaling parameter in [0,1]");
        cmd->add_option("--alpha", f.alpha, "Beta shape (design1 only)");
        cmd->add_option("--k", f.k, "factorial fraction exponent (design4 only)");
    }
    cmd->add_option("--samples", f.samples, "Monte Carlo domain samples");
    cmd->add_option("--seed", f.seed, "RNG seed (default 0, never wall clock)");
    cmd->add_option("--reps", f.reps, "design replications for random designs");
    cmd->add_option("--threads", f.threads, "worker threads (0 = COVER_THREADS or hardware)");
    cmd->add_flag("--paper-budget", f.paper_budget, "raise budgets to 1e6 samples / 100 reps");
    cmd->add_option("--out", f.out, "write CSV here (with .manifest.json alongside)");
}

covq::Family parse_family(const std::string& name) {
    if (name == "design1" || name == "beta") return covq::Family::Beta;
    if (name == "design2a" || name == "vertex-with") return covq::Family::VertexWith;
    if (name == "design2b" || name == "vertex-without") return covq::Family::VertexWithout;
    if (name == "design3" || name == "sobol") return covq::Family::Sobol;
    if (name == "design4" || name == "factorial") return covq::Family::Factorial;
    if (name == "simplex-s1" || name == "s1") return covq::Family::SimplexS1;
    if (name == "simplex-s2" || name == "s2") return covq::Family::SimplexS2;
    throw CLI::ValidationError("--family", "unknown family '" + name + "'");
}


// Index-based grid so accumulated rounding never pushes values past the
// endpoint (delta = 1 + 2e-16 would fail spec validation).
std::vector<double> build_grid(double lo, double hi, double step, const char* flag) {
    std::vector<double> grid;
    if (step > 0.0)
        for (int i = 0;; ++i) {
            const double v = lo + i * step;
            if (v > hi + 1e-9) break;
            grid.push_back(std::min(v, hi));
        }
    if (grid.empty()) throw CLI::ValidationError(flag, "empty grid");
    return grid;
}

covq::DesignSpec build_spec(const CommonFlags& f) {
    covq::DesignSpec spec;
    spec.family = parse_family(f.family);
    spec.d = f.d;
    spec.n = f.n;
    spec.delta = f.delta;
    spec.alpha = f.alpha;
    spec.seed = f.seed;
    if (spec.family == covq::Family::Beta && f.alpha <= 0.0)
        throw CLI::ValidationError("--alpha",
                                   "design1 needs alpha > 0; alpha = 0 is design2a");
    if (spec.family == covq::Family::Factorial) {
        int k = f.k;
        if (k < 0) {  // infer from n = 2^(d-k)
            int m = 0;
            while ((1LL << m) < f.n) ++m;
            if ((1LL << m) != f.n)
                throw CLI::ValidationError("--n", "design4 needs n = 2^(d-k)");
            k = f.d - m;
        }
        spec.k = k;
    }
    spec.validate();
    return spec;
}

covq::McConfig build_mc(const CommonFlags& f) {
    covq::McConfig cfg;
    cfg.samples = f.paper_budget ? 1000000 : f.samples;
    cfg.reps = f.paper_budget ? 100 : f.reps;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    cfg.validate();
    return cfg;
}

covq::ApproxFamily approx_family(covq::Family family) {
    switch (family) {
        case covq::Family::Beta: return covq::ApproxFamily::Design1;
        case covq::Family::VertexWith: return covq::ApproxFamily::Design2a;
        case covq::Family::VertexWithout: return covq::ApproxFamily::Design2b;
        default:
            throw CLI::ValidationError(
                "--method", "analytic approximations exist for design1/design2a/design2b only");
    }
}

covq::Domain domain_of(const covq::DesignSpec& spec) { return covq::natural_domain(spec); }

// Every file output is paired with a manifest that can re-create it.
void emit(const std::string& out, const std::string& csv, const std::vector<std::string>& argv,
          const json& resolved, double wall_ms) {
    if (out.empty()) {
        std::cout << csv;
        return;
    }
    {
        std::ofstream file(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + out);
        file << csv;
    }
    json manifest;
    manifest["tool"] = "covq";
    manifest["version"] = covq::kVersion;
    manifest["argv"] = argv;
    manifest["resolved"] = resolved;
    manifest["wall_ms"] = wall_ms;
    std::ofstream mfile(out + ".manifest.json");
    mfile << manifest.dump(2) << "\n";
}

json spec_json(const covq::DesignSpec& spec) {
    json j;
    j["family"] = covq::family_name(spec.family);
    j["d"] = spec.d;
    j["n"] = spec.n;
    j["delta"] = spec.delta;
    j["alpha"] = spec.alpha;
    j["k"] = spec.k;
    j["seed"] = spec.seed;
    return j;
}

json mc_json(const covq::McConfig& cfg) {
    json j;
    j["samples"] = cfg.samples;
    j["reps"] = cfg.reps;
    j["seed"] = cfg.seed;
    j["quadrature_tol"] = 1e-8;
    return j;
}

std::string fmt(double v) { return covq::detail::format_double(v); }

// --- coverage ----------------------------------------------------------------

int run_coverage(const CommonFlags& f, double r, const std::string& method,
                 const std::string& variant_name, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::DesignSpec spec = build_spec(f);
    const covq::McConfig cfg = build_mc(f);
    const covq::ApproxVariant variant = variant_name == "normal" ? covq::ApproxVariant::Normal
                                                                 : covq::ApproxVariant::Refined;
    if (r < 0.0) throw CLI::ValidationError("--r", "radius must be >= 0");

    std::ostringstream csv;
    csv << "family,d,n,alpha,delta,r,method,value,std_error\n";
    auto row = [&](const std::string& m, double value, double err) {
        csv << f.family << "," << f.d << "," << f.n << "," << fmt(spec.alpha) << ","
            << fmt(spec.delta) << "," << fmt(r) << "," << m << "," << fmt(value) << "," << fmt(err)
            << "\n";
    };
    if (method == "approx" || method == "both") {
        const auto approx = covq::coverage_approx(approx_family(spec.family), spec.d,
                                                  static_cast<double>(spec.n), spec.delta,
                                                  spec.alpha, r, variant);
        row(std::string("approx-") + (variant == covq::ApproxVariant::Normal ? "normal" : "refined"),
            approx.value, approx.quadrature_error);
    }
    if (method == "mc" || method == "both") {
        const auto mc = covq::mc_coverage(spec, domain_of(spec), r, cfg);
        row("mc", mc.value, mc.std_error);
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["spec"] = spec_json(spec);
    resolved["mc"] = mc_json(cfg);
    resolved["r"] = r;
    resolved["method"] = method;
    resolved["variant"] = variant_name;
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

// --- quantize ----------------------------------------------------------------

int run_quantize(const CommonFlags& f, const std::string& method,
                 const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::DesignSpec spec = build_spec(f);
    const covq::McConfig cfg = build_mc(f);
    std::ostringstream csv;
    csv << "family,d,n,alpha,delta,method,theta,normalized,std_error\n";
    auto row = [&](const std::string& m, double theta, double normalized, double err) {
        csv << f.family << "," << f.d << "," << f.n << "," << fmt(spec.alpha) << ","
            << fmt(spec.delta) << "," << m << "," << fmt(theta) << "," << fmt(normalized) << ","
            << fmt(err) << "\n";
    };
    if (method == "approx" || method == "both") {
        const auto q = covq::quant_error(approx_family(spec.family), spec.d,
                                         static_cast<double>(spec.n), spec.delta, spec.alpha);
        row("approx", q.theta, q.normalized, q.quadrature_error);
    }
    if (method == "mc" || method == "both") {
        const auto est = covq::mc_quantization(spec, domain_of(spec), cfg);
        row("mc", est.value,
            covq::normalized_quant(static_cast<double>(spec.n), spec.d, est.value),
            est.std_error);
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["spec"] = spec_json(spec);
    resolved["mc"] = mc_json(cfg);
    resolved["method"] = method;
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

// --- table -------------------------------------------------------------------

int run_table(const CommonFlags& f, int table_id, double delta_step,
              const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::McConfig cfg = build_mc(f);
    const auto cells = covq::reproduce_table(table_id, cfg, delta_step);  // throws on bad id
    std::ostringstream csv;
    csv << "label,n,value,delta,paper_value,paper_delta,value_diff,delta_diff,method\n";
    for (const auto& c : cells)
        csv << c.label << "," << c.n << "," << fmt(c.value) << "," << fmt(c.delta) << ","
            << fmt(c.paper_value) << "," << fmt(c.paper_delta) << ","
            << fmt(c.value - c.paper_value) << "," << fmt(c.delta - c.paper_delta) << ","
            << c.method << "\n";
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["table"] = table_id;
    resolved["delta_step"] = delta_step;
    resolved["mc"] = mc_json(cfg);
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

// --- curve -------------------------------------------------------------------

int run_curve(const CommonFlags& f, const std::string& sweep, double r_min, double r_max,
              double r_step, double r_fixed, double delta_min, double delta_max, double delta_step,
              bool quantize, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    covq::DesignSpec spec = build_spec(f);
    const covq::McConfig cfg = build_mc(f);
    std::ostringstream csv;
    json resolved;
    resolved["spec"] = spec_json(spec);
    resolved["mc"] = mc_json(cfg);
    resolved["sweep"] = sweep;

    if (sweep == "r") {
        const std::vector<double> radii = build_grid(r_min, r_max, r_step, "--r-step");
        const auto curve = covq::mc_cdf_curve(spec, domain_of(spec), radii, cfg);
        std::ostringstream body;
        covq::write_curve_csv(body, curve);
        csv << body.str();
    } else if (sweep == "delta") {
        const std::vector<double> deltas = build_grid(delta_min, delta_max, delta_step, "--delta-step");
        csv << "delta," << (quantize ? "theta" : "value") << ",std_error\n";
        for (double delta : deltas) {
            spec.delta = delta;
            const auto est = quantize
                                 ? covq::mc_quantization(spec, domain_of(spec), cfg)
                                 : covq::mc_coverage(spec, domain_of(spec), r_fixed, cfg);
            csv << fmt(delta) << "," << fmt(est.value) << "," << fmt(est.std_error) << "\n";
        }
        resolved["r"] = r_fixed;
        resolved["quantize"] = quantize;
    } else {
        throw CLI::ValidationError("--sweep", "sweep must be 'r' or 'delta'");
    }
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

// --- tune --------------------------------------------------------------------

int run_tune(const CommonFlags& f, const std::string& objective, double target,
             const std::string& method_name, double delta_min, double delta_max, double delta_step,
             const std::string& json_out, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::DesignSpec spec = build_spec(f);
    const covq::McConfig cfg = build_mc(f);
    const covq::TuneMethod method =
        method_name == "approx" ? covq::TuneMethod::Approx : covq::TuneMethod::MonteCarlo;
    const std::vector<double> grid = build_grid(delta_min, delta_max, delta_step, "--delta-step");

    covq::TuneResult result;
    if (objective == "coverage") {
        if (target <= 0.0 || target >= 1.0)
            throw CLI::ValidationError("--target", "target must be in (0,1)");
        result = covq::optimal_delta_for_coverage(spec, domain_of(spec), target, grid, cfg, method);
    } else if (objective == "quantization") {
        result = covq::optimal_delta_for_quantization(spec, domain_of(spec), grid, cfg, method);
    } else {
        throw CLI::ValidationError("--objective", "objective must be coverage|quantization");
    }

    std::ostringstream csv;
    covq::write_tune_csv(csv, result);
    json summary;
    summary["family"] = f.family;
    summary["params"] = spec_json(spec);
    summary["objective"] = objective;
    summary["target"] = target;
    summary["delta_star"] = result.delta_star;
    summary["objective_star"] = result.objective_star;
    summary["seed"] = cfg.seed;
    summary["samples"] = cfg.samples;
    summary["reps"] = cfg.reps;
    summary["method"] = method_name;
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["spec"] = spec_json(spec);
    resolved["mc"] = mc_json(cfg);
    resolved["summary"] = summary;
    emit(f.out, csv.str(), argv, resolved, wall);
    if (json_out.empty()) {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::ofstream jf(json_out);
        jf << summary.dump(2) << "\n";
    }
    return 0;
}

// --- simplex sweep -------------------------------------------------------------

int run_sweep(const CommonFlags& f, double r_min, double r_max, double r_step, double d_min,
              double d_max, double d_step, bool quantize, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::Family family = parse_family(f.family);
    const covq::McConfig cfg = build_mc(f);
    const std::vector<double> deltas = build_grid(d_min, d_max, d_step, "--delta-step");
    std::vector<double> radii;
    if (!quantize) radii = build_grid(r_min, r_max, r_step, "--r-step");
    const covq::SimplexSweep sweep =
        quantize ? covq::sweep_quantization(family, f.d, f.n, deltas, cfg)
                 : covq::sweep_coverage(family, f.d, f.n, deltas, radii, cfg);
    std::ostringstream csv;
    covq::write_sweep_csv(csv, sweep);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["family"] = f.family;
    resolved["d"] = f.d;
    resolved["n"] = f.n;
    resolved["mc"] = mc_json(cfg);
    resolved["quantize"] = quantize;
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

// --- points --------------------------------------------------------------------

int run_points(const CommonFlags& f, const std::vector<std::string>& argv) {
    const auto t0 = std::chrono::steady_clock::now();
    const covq::DesignSpec spec = build_spec(f);
    const covq::PointSet pts = covq::generate(spec);
    std::ostringstream csv;
    covq::write_points_csv(csv, pts);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    json resolved;
    resolved["spec"] = spec_json(spec);
    emit(f.out, csv.str(), argv, resolved, wall);
    return 0;
}

int dispatch(std::vector<std::string> args);

// Re-executes the argv stored in a manifest; the CSV it wrote is reproduced
// byte-for-byte because every randomized path is seed-driven.
int run_rerun(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot read " + manifest_path);
    json manifest;
    in >> manifest;
    std::vector<std::string> argv = manifest.at("argv").get<std::vector<std::string>>();
    if (!argv.empty()) argv.erase(argv.begin());  // drop program name
    return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
    CLI::App app{"covering and quantization designs for the cube and simplex"};
    app.set_version_flag("--version", covq::kVersion);
    app.require_subcommand(1);

    CommonFlags f_cov, f_quant, f_table, f_curve, f_tune;

    auto* cov = app.add_subcommand("coverage", "coverage proportion at one radius");
    double r = 1.0;
    std::string cov_method = "both", cov_variant = "refined";
    add_common(cov, f_cov);
    cov->add_option("--r", r, "ball radius");
    cov->add_option("--method", cov_method, "approx|mc|both")
        ->check(CLI::IsMember({"approx", "mc", "both"}));
    cov->add_option("--variant", cov_variant, "normal|refined")
        ->check(CLI::IsMember({"normal", "refined"}));

    auto* quant = app.add_subcommand("quantize", "mean squared quantization error");
    std::string quant_method = "both";
    add_common(quant, f_quant);
    quant->add_option("--method", quant_method, "approx|mc|both")
        ->check(CLI::IsMember({"approx", "mc", "both"}));

    auto* table = app.add_subcommand("table", "reproduce a published benchmark table");
    int table_id = 1;
    double table_step = 0.02;
    add_common(table, f_table, false);
    table->add_option("--table", table_id, "table number 1-6")->required();
    table->add_option("--delta-step", table_step, "delta grid resolution");

    auto* curve = app.add_subcommand("curve", "c.d.f. curves and delta sweeps");
    std::string sweep = "r";
    double r_min = 0.0, r_max = 2.0, r_step = 0.05, r_fixed = 1.0;
    double c_dmin = 0.02, c_dmax = 1.0, c_dstep = 0.02;
    bool curve_quant = false;
    add_common(curve, f_curve);
    curve->add_option("--sweep", sweep, "r|delta");
    curve->add_option("--r-min", r_min);
    curve->add_option("--r-max", r_max);
    curve->add_option("--r-step", r_step);
    curve->add_option("--r", r_fixed, "fixed radius for delta sweeps");
    curve->add_option("--delta-min", c_dmin);
    curve->add_option("--delta-max", c_dmax);
    curve->add_option("--delta-step", c_dstep);
    curve->add_flag("--quantize", curve_quant, "sweep E theta instead of coverage");

    auto* tune = app.add_subcommand("tune", "optimal delta for coverage or quantization");
    std::string objective = "coverage", tune_method = "mc", json_out;
    double target = 0.9;
    double t_dmin = 0.02, t_dmax = 1.0, t_dstep = 0.02;
    add_common(tune, f_tune);
    tune->add_option("--objective", objective, "coverage|quantization");
    tune->add_option("--target", target, "coverage level in (0,1)");
    tune->add_option("--method", tune_method, "approx|mc")
        ->check(CLI::IsMember({"approx", "mc"}));
    tune->add_option("--delta-min", t_dmin);
    tune->add_option("--delta-max", t_dmax);
    tune->add_option("--delta-step", t_dstep);
    tune->add_option("--json-out", json_out, "write the JSON summary here");

    auto* sweep_cmd = app.add_subcommand("sweep", "simplex coverage/quantization sweep matrix");
    CommonFlags f_sweep;
    f_sweep.family = "simplex-s1";
    double s_rmin = 0.11, s_rmax = 0.17, s_rstep = 0.02;
    double s_dmin = 0.1, s_dmax = 1.0, s_dstep = 0.1;
    bool sweep_quant = false;
    add_common(sweep_cmd, f_sweep);
    sweep_cmd->add_option("--r-min", s_rmin);
    sweep_cmd->add_option("--r-max", s_rmax);
    sweep_cmd->add_option("--r-step", s_rstep);
    sweep_cmd->add_option("--delta-min", s_dmin);
    sweep_cmd->add_option("--delta-max", s_dmax);
    sweep_cmd->add_option("--delta-step", s_dstep);
    sweep_cmd->add_flag("--quantize", sweep_quant, "sweep E theta instead of coverage");

    auto* points_cmd = app.add_subcommand("points", "emit a design as CSV (header x1,...,xd)");
    CommonFlags f_points;
    add_common(points_cmd, f_points);

    auto* rerun = app.add_subcommand("rerun", "re-execute a run manifest");
    std::string manifest_path;
    rerun->add_option("manifest", manifest_path, "path to a .manifest.json")->required();

    std::vector<std::string> argv_record = args;
    argv_record.insert(argv_record.begin(), "covq");

    // CLI11 consumes arguments in reverse
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or a one-line diagnostic
        return code == 0 ? 0 : kExitUsage;
    }

    const CommonFlags* active = nullptr;
    if (cov->parsed()) active = &f_cov;
    else if (quant->parsed()) active = &f_quant;
    else if (table->parsed()) active = &f_table;
    else if (curve->parsed()) active = &f_curve;
    else if (tune->parsed()) active = &f_tune;
    else if (sweep_cmd->parsed()) active = &f_sweep;
    else if (points_cmd->parsed()) active = &f_points;
    if (active) covq::worker_count() = covq::resolve_threads(active->threads);

    if (cov->parsed()) return run_coverage(f_cov, r, cov_method, cov_variant, argv_record);
    if (quant->parsed()) return run_quantize(f_quant, quant_method, argv_record);
    if (table->parsed()) return run_table(f_table, table_id, table_step, argv_record);
    if (curve->parsed())
        return run_curve(f_curve, sweep, r_min, r_max, r_step, r_fixed, c_dmin, c_dmax, c_dstep,
                         curve_quant, argv_record);
    if (tune->parsed())
        return run_tune(f_tune, objective, target, tune_method, t_dmin, t_dmax, t_dstep, json_out,
                        argv_record);
    if (sweep_cmd->parsed())
        return run_sweep(f_sweep, s_rmin, s_rmax, s_rstep, s_dmin, s_dmax, s_dstep, sweep_quant,
                         argv_record);
    if (points_cmd->parsed()) return run_points(f_points, argv_record);
    if (rerun->parsed()) return run_rerun(manifest_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(std::move(args));
    } catch (const CLI::ParseError& e) {
        std::cerr << "covq: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "covq: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "covq: numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}
