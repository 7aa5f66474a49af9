// Command-line driver for the photonic variational-algorithm simulator.
//
// Subcommands reproduce the bundled experiments (vqe-h2, vqf, scan-h2,
// dissociation, interference, certify-dim, fidelity) and write
// results.json + trace.jsonl + plot-ready CSV into the output directory.
// results.json is byte-stable for a fixed config and seed; timestamps and
// timings go to meta.json.

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvqa/errors.hpp"
#include "pvqa/experiments.hpp"
#include "pvqa/io.hpp"

namespace fs = std::filesystem;
using namespace pvqa;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
    std::string output_dir;
    std::uint64_t seed = 0;
    bool exact = false;
    std::int64_t counts = 2000;
    double car = std::numeric_limits<double>::infinity();
    bool subtract_accidentals = false;
    double epsilon = 1.0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--output-dir", o.output_dir, "Directory for results/trace/CSV files")
        ->envname("PVQA_OUTPUT_DIR");
    cmd->add_option("--seed", o.seed, "Root RNG seed");
    cmd->add_flag("--exact", o.exact, "Noiseless evaluation (no shot noise)");
    cmd->add_option("--counts", o.counts, "Coincidence budget per measurement setting");
    cmd->add_option("--car", o.car, "Coincidence-to-accidental ratio (default: no accidentals)");
    cmd->add_flag("--subtract-accidentals", o.subtract_accidentals,
                  "Subtract the modeled accidental floor from estimates");
    cmd->add_option("--epsilon", o.epsilon, "Source indistinguishability weight in [0,1]");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware parallelism)");
}

std::optional<NoiseConfig> noise_from(const CommonOpts& o) {
    if (o.exact) return std::nullopt;
    NoiseConfig cfg;
    cfg.total_counts_per_setting = o.counts;
    cfg.car = o.car;
    cfg.seed = o.seed;
    cfg.subtract_accidentals = o.subtract_accidentals;
    return cfg;
}

void validate_common(const CommonOpts& o, std::vector<std::string>& errs) {
    if (!(o.epsilon >= 0.0 && o.epsilon <= 1.0)) errs.push_back("epsilon must lie in [0, 1]");
    if (!o.exact && o.counts < 1) errs.push_back("counts must be a positive integer");
    if (!(o.car > 0.0)) errs.push_back("car must be positive");
    if (o.threads < 0) errs.push_back("threads must be >= 0");
}

std::string h2_grid_text() {
    std::string s = "{";
    for (double r : h2_table_radii()) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%g ", r);
        s += buf;
    }
    s.back() = '}';
    return s;
}

bool representable_semiprime(int n) {
    for (int p : {3, 5, 7})
        for (int q : {3, 5, 7})
            if (p * q == n) return true;
    return false;
}

json noise_json(const CommonOpts& o) {
    if (o.exact) return "exact";
    json j;
    j["counts_per_setting"] = o.counts;
    j["car"] = std::isinf(o.car) ? json("inf") : json(o.car);
    j["subtract_accidentals"] = o.subtract_accidentals;
    return j;
}

struct RunContext {
    fs::path dir;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    // Per-evaluation timings live here (and in meta.json), never in
    // results.json, which must stay byte-stable for a fixed config.
    std::shared_ptr<std::vector<double>> eval_ms = std::make_shared<std::vector<double>>();
    std::shared_ptr<std::chrono::steady_clock::time_point> last =
        std::make_shared<std::chrono::steady_clock::time_point>(t0);

    RunContext(const std::string& output_dir, const std::string& experiment) {
        dir = output_dir.empty() ? fs::path("pvqa-out") / experiment : fs::path(output_dir);
        fs::create_directories(dir);
        fs::remove(dir / "trace.jsonl");
    }

    EvalLogger logger() const {
        fs::path trace = dir / "trace.jsonl";
        auto ms = eval_ms;
        auto prev = last;
        return [trace, ms, prev](std::uint64_t idx, const Eigen::VectorXd& params,
                                 const CostEvaluation& ev) {
            auto now = std::chrono::steady_clock::now();
            ms->push_back(std::chrono::duration<double, std::milli>(now - *prev).count());
            *prev = now;
            json rec{{"eval_index", idx},
                     {"params", json::array()},
                     {"value", ev.value},
                     {"std_err", ev.std_err}};
            for (Eigen::Index i = 0; i < params.size(); ++i) rec["params"].push_back(params(i));
            if (!ev.records.empty()) {
                rec["group_records"] = json::array();
                for (const auto& r : ev.records) rec["group_records"].push_back(to_json(r));
            }
            append_jsonl(trace, rec);
        };
    }

    void finish(const json& results) const {
        write_json_file(dir / "results.json", results);
        auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        json meta{{"timestamp_utc", stamp}, {"wall_clock_ms", wall}};
        if (!eval_ms->empty()) meta["eval_wall_ms"] = *eval_ms;
        write_json_file(dir / "meta.json", meta);
        std::cout << "wrote " << (dir / "results.json").string() << "\n";
    }
};

int fail_config(const std::vector<std::string>& errs) {
    for (const auto& e : errs) std::cerr << "config error: " << e << "\n";
    return kExitConfig;
}

// --- vqe-h2 -------------------------------------------------------------------

struct VqeOpts {
    CommonOpts common;
    double r = 0.736;
    std::string optimizer = "bayes";
    GpConfig gp;
    GdConfig gd;
    double init_theta = 0.0;
    int max_iters = 0;  // 0 keeps the per-optimizer default
    double tol_param = 0.0, tol_cost = 0.0;
};

int run_vqe_cmd(const VqeOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (!h2_grid_contains(o.r))
        errs.push_back("r is not on the bundled bond-length grid " + h2_grid_text());
    if (o.optimizer != "bayes" && o.optimizer != "gd")
        errs.push_back("optimizer must be 'bayes' or 'gd'");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "vqe-h2");
    GpConfig gp = o.gp;
    GdConfig gd = o.gd;
    if (o.max_iters > 0) gp.max_iters = gd.max_iters = o.max_iters;
    if (o.tol_param > 0) gp.tol_param = gd.tol_param = o.tol_param;
    if (o.tol_cost > 0) gp.tol_cost = gd.tol_cost = o.tol_cost;

    auto noise = noise_from(o.common);
    OptRun run = o.optimizer == "bayes"
                     ? run_vqe_bayesian(o.r, noise, gp, ctx.logger())
                     : run_vqe_gradient(o.r, noise, gd, o.init_theta, ctx.logger());

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < run.trajectory.size(); ++i)
        rows.push_back({static_cast<double>(i), run.trajectory[i].params(0),
                        run.trajectory[i].cost, run.trajectory[i].std_err});
    write_csv(ctx.dir / "trajectory.csv", {"step", "theta", "energy_ha", "std_err"}, rows);

    ctx.finish(json{{"experiment", "vqe-h2"},
                    {"r_angstrom", o.r},
                    {"optimizer", o.optimizer},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"run", to_json(run)}});
    return 0;
}

// --- vqf ----------------------------------------------------------------------

struct VqfOpts {
    CommonOpts common;
    int n = 35;
    GdConfig gd = vqf_default_gd();
};

int run_vqf_cmd(const VqfOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (!(o.n % 2 == 1) || !representable_semiprime(o.n))
        errs.push_back("N must be an odd semiprime with two-bit factors (valid: 9, 15, 21, 25, 35, 49)");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "vqf");
    VqfRun run = run_vqf(o.n, noise_from(o.common), o.gd, ctx.logger());

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < run.run.trajectory.size(); ++i) {
        const auto& p = run.run.trajectory[i];
        rows.push_back({static_cast<double>(i), p.params(0), p.params(1), p.params(2), p.cost,
                        p.std_err});
    }
    write_csv(ctx.dir / "trajectory.csv",
              {"step", "theta1", "theta2", "theta3", "cost", "std_err"}, rows);

    json alpha = json::array();
    for (int m = 0; m < 4; ++m) alpha.push_back(std::norm(run.final_alpha(m)));
    ctx.finish(json{{"experiment", "vqf"},
                    {"n", o.n},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"factors", json::array({run.p, run.q})},
                    {"final_alpha_sq", alpha},
                    {"run", to_json(run.run)}});
    return 0;
}

// --- scan-h2 ------------------------------------------------------------------

struct ScanOpts {
    CommonOpts common;
    double r = 0.736;
    double lo = -kPi / 4.0, hi = kPi / 2.0;
    int points = 41;
};

int run_scan_cmd(const ScanOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (!h2_grid_contains(o.r))
        errs.push_back("r is not on the bundled bond-length grid " + h2_grid_text());
    if (o.points < 3) errs.push_back("points must be >= 3");
    if (!(o.hi > o.lo)) errs.push_back("grid-hi must exceed grid-lo");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "scan-h2");
    std::vector<double> grid(o.points);
    for (int i = 0; i < o.points; ++i) grid[i] = o.lo + (o.hi - o.lo) * i / (o.points - 1);
    auto scan = h2_theta_scan(o.r, grid, noise_from(o.common), ctx.logger());
    auto fit = fit_energy_sinusoid(scan);

    std::vector<std::vector<double>> rows;
    for (const auto& p : scan) rows.push_back({p.theta, p.energy, p.std_err});
    write_csv(ctx.dir / "scan.csv", {"theta", "energy_ha", "std_err"}, rows);

    json points = json::array();
    for (const auto& p : scan)
        points.push_back(json{{"theta", p.theta}, {"energy", p.energy}, {"std_err", p.std_err}});
    ctx.finish(json{{"experiment", "scan-h2"},
                    {"r_angstrom", o.r},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"points", points},
                    {"fit", json{{"g0", fit.g0},
                                 {"g1", fit.g1},
                                 {"g2", fit.g2},
                                 {"e_min", fit.e_min},
                                 {"theta_min", fit.theta_min}}}});
    return 0;
}

// --- dissociation ---------------------------------------------------------------

struct DissOpts {
    CommonOpts common;
    std::vector<double> radii;
    int fit_points = 25;
};

int run_diss_cmd(const DissOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    std::vector<double> radii = o.radii.empty() ? h2_table_radii() : o.radii;
    for (double r : radii)
        if (!h2_grid_contains(r))
            errs.push_back("r=" + std::to_string(r) + " is not on the bundled grid " +
                           h2_grid_text());
    if (o.fit_points < 3) errs.push_back("fit-points must be >= 3");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "dissociation");
    auto curve = h2_dissociation(radii, noise_from(o.common), o.fit_points, o.common.threads);

    std::vector<std::vector<double>> rows;
    for (const auto& p : curve) rows.push_back({p.r, p.e_min, p.theta_min});
    write_csv(ctx.dir / "dissociation.csv", {"r_angstrom", "e_min_ha", "theta_min"}, rows);

    json points = json::array();
    for (const auto& p : curve)
        points.push_back(json{{"r", p.r}, {"e_min", p.e_min}, {"theta_min", p.theta_min}});
    ctx.finish(json{{"experiment", "dissociation"},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"points", points}});
    return 0;
}

// --- interference ----------------------------------------------------------------

struct InterfOpts {
    CommonOpts common;
    std::string pair = "2-3";
    int points = 41;
};

int run_interf_cmd(const InterfOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (o.pair != "2-3" && o.pair != "1-3" && o.pair != "3-4")
        errs.push_back("pair must be one of 2-3, 1-3, 3-4");
    if (o.points < 4) errs.push_back("points must be >= 4");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "interference");
    auto scan = heralded_interference(o.pair, o.common.epsilon, default_phase_grid(o.points),
                                      noise_from(o.common));

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < scan.phase_grid.size(); ++i)
        rows.push_back({scan.phase_grid[i], scan.normalized_cc[i]});
    write_csv(ctx.dir / "fringe.csv", {"phase_rad", "normalized_cc"}, rows);

    ctx.finish(json{{"experiment", "interference"},
                    {"epsilon", o.common.epsilon},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"scan", to_json(scan)}});
    return 0;
}

// --- certify-dim -----------------------------------------------------------------

struct CertOpts {
    CommonOpts common;
    int d = 0;
    std::string sources;
    bool all = false;
};

int run_cert_cmd(const CertOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (!o.all) {
        bool found = false;
        for (const auto& p : tables::entangled_prep_settings())
            if (p.d == o.d && o.sources == p.label) found = true;
        if (!found)
            errs.push_back(
                "need --all or a valid (--d, --sources) pair: (2, 2-3|1-3|3-4), "
                "(3, 1-2-3|1-3-4|2-3-4), (4, all)");
    }
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "certify-dim");
    json list = json::array();
    std::vector<std::vector<double>> rows;
    auto run_one = [&](int d, const std::string& label) {
        auto res = certified_dimension(d, label, o.common.epsilon, noise_from(o.common));
        list.push_back(to_json(res));
        rows.push_back({static_cast<double>(d), res.certified_dimension});
    };
    if (o.all)
        for (const auto& p : tables::entangled_prep_settings()) run_one(p.d, p.label);
    else
        run_one(o.d, o.sources);

    write_csv(ctx.dir / "certified_dimension.csv", {"d", "certified_dimension"}, rows);
    ctx.finish(json{{"experiment", "certify-dim"},
                    {"epsilon", o.common.epsilon},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"results", list}});
    return 0;
}

// --- fidelity --------------------------------------------------------------------

struct FidOpts {
    CommonOpts common;
    int source = 0;  // 0 = all four
};

int run_fid_cmd(const FidOpts& o) {
    std::vector<std::string> errs;
    validate_common(o.common, errs);
    if (o.source < 0 || o.source > 4) errs.push_back("source must be 1..4 (or omitted for all)");
    if (!errs.empty()) return fail_config(errs);

    RunContext ctx(o.common.output_dir, "fidelity");
    json list = json::array();
    std::vector<std::vector<double>> rows;
    auto run_one = [&](int m) {
        double f = projector_fidelity(m, noise_from(o.common), o.common.epsilon);
        list.push_back(json{{"source", m}, {"fidelity", f}});
        rows.push_back({static_cast<double>(m), f});
    };
    if (o.source == 0)
        for (int m = 1; m <= 4; ++m) run_one(m);
    else
        run_one(o.source);

    write_csv(ctx.dir / "fidelity.csv", {"source", "fidelity"}, rows);
    ctx.finish(json{{"experiment", "fidelity"},
                    {"epsilon", o.common.epsilon},
                    {"noise", noise_json(o.common)},
                    {"seed", o.common.seed},
                    {"results", list}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator of a four-qubit silicon-photonic variational quantum processor"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "TOML-style config file with per-subcommand sections");
    bool dump_flag = false;
    app.add_flag("--dump-tables", dump_flag, "Emit the bundled data tables as JSON and exit");

    VqeOpts vqe;
    auto* cmd_vqe = app.add_subcommand("vqe-h2", "Variational eigensolver for H2");
    cmd_vqe->configurable();
    add_common(cmd_vqe, vqe.common);
    cmd_vqe->add_option("--r", vqe.r, "Bond length in Angstrom (bundled grid)")->required();
    cmd_vqe->add_option("--optimizer", vqe.optimizer, "bayes or gd");
    cmd_vqe->add_option("--eta", vqe.gd.eta, "Gradient-descent learning rate");
    cmd_vqe->add_option("--eps-fd", vqe.gd.epsilon_fd, "Forward-difference step (rad)");
    cmd_vqe->add_option("--init", vqe.init_theta, "Initial theta for gradient descent");
    cmd_vqe->add_option("--max-iters", vqe.max_iters, "Iteration cap");
    cmd_vqe->add_option("--tol-param", vqe.tol_param, "Parameter tolerance (rad)");
    cmd_vqe->add_option("--tol-cost", vqe.tol_cost, "Cost tolerance (Ha)");
    cmd_vqe->add_option("--domain-lo", vqe.gp.lo, "Bayesian search domain lower bound");
    cmd_vqe->add_option("--domain-hi", vqe.gp.hi, "Bayesian search domain upper bound");
    cmd_vqe->add_option("--gp-amplitude", vqe.gp.m_k, "GP kernel amplitude");
    cmd_vqe->add_option("--gp-length", vqe.gp.sigma_k, "GP kernel length scale");
    cmd_vqe->add_option("--gp-z", vqe.gp.z_lcb, "Lower-confidence-bound z score");
    cmd_vqe->add_option("--gp-grid", vqe.gp.grid_points, "Acquisition grid points");

    VqfOpts vqf;
    vqf.common.counts = 4000;
    auto* cmd_vqf = app.add_subcommand("vqf", "Variational factoring of a semiprime");
    cmd_vqf->configurable();
    add_common(cmd_vqf, vqf.common);
    cmd_vqf->add_option("--n", vqf.n, "Odd semiprime to factor")->required();
    cmd_vqf->add_option("--eta", vqf.gd.eta, "Gradient-descent learning rate");
    cmd_vqf->add_option("--eps-fd", vqf.gd.epsilon_fd, "Forward-difference step (rad)");
    cmd_vqf->add_option("--max-iters", vqf.gd.max_iters, "Iteration cap");
    cmd_vqf->add_option("--tol-param", vqf.gd.tol_param, "Parameter tolerance (rad)");
    cmd_vqf->add_option("--tol-cost", vqf.gd.tol_cost, "Cost tolerance");

    ScanOpts scan;
    auto* cmd_scan = app.add_subcommand("scan-h2", "Energy vs variational angle");
    cmd_scan->configurable();
    add_common(cmd_scan, scan.common);
    cmd_scan->add_option("--r", scan.r, "Bond length in Angstrom")->required();
    cmd_scan->add_option("--grid-lo", scan.lo, "Scan lower bound (rad)");
    cmd_scan->add_option("--grid-hi", scan.hi, "Scan upper bound (rad)");
    cmd_scan->add_option("--points", scan.points, "Scan points");

    DissOpts diss;
    auto* cmd_diss = app.add_subcommand("dissociation", "Minimum energy vs bond length");
    cmd_diss->configurable();
    add_common(cmd_diss, diss.common);
    cmd_diss->add_option("--r", diss.radii, "Bond lengths (default: whole bundled grid)");
    cmd_diss->add_option("--fit-points", diss.fit_points, "Scan points per bond length");

    InterfOpts interf;
    auto* cmd_interf = app.add_subcommand("interference", "Heralded single-photon fringe");
    cmd_interf->configurable();
    add_common(cmd_interf, interf.common);
    cmd_interf->add_option("--pair", interf.pair, "Source pair: 2-3, 1-3 or 3-4");
    cmd_interf->add_option("--points", interf.points, "Phase grid points");

    CertOpts cert;
    auto* cmd_cert = app.add_subcommand("certify-dim", "Entanglement dimension witness");
    cmd_cert->configurable();
    add_common(cmd_cert, cert.common);
    cmd_cert->add_option("--d", cert.d, "Entangled dimension: 2, 3 or 4");
    cmd_cert->add_option("--sources", cert.sources, "Source combination label, e.g. 2-3 or all");
    cmd_cert->add_flag("--all", cert.all, "Run every bundled source combination");

    FidOpts fid;
    auto* cmd_fid = app.add_subcommand("fidelity", "Computational projector fidelity");
    cmd_fid->configurable();
    add_common(cmd_fid, fid.common);
    cmd_fid->add_option("--source", fid.source, "Pumped source 1..4 (default: all)");

    std::string dump_dir = "pvqa-out/tables";
    auto* cmd_dump = app.add_subcommand("dump-tables", "Emit the bundled data tables as JSON");
    cmd_dump->add_option("--output-dir", dump_dir, "Directory for the JSON tables")
        ->envname("PVQA_OUTPUT_DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return kExitConfig;
    }

    try {
        if (cmd_vqe->parsed()) return run_vqe_cmd(vqe);
        if (cmd_vqf->parsed()) return run_vqf_cmd(vqf);
        if (cmd_scan->parsed()) return run_scan_cmd(scan);
        if (cmd_diss->parsed()) return run_diss_cmd(diss);
        if (cmd_interf->parsed()) return run_interf_cmd(interf);
        if (cmd_cert->parsed()) return run_cert_cmd(cert);
        if (cmd_fid->parsed()) return run_fid_cmd(fid);
        if (cmd_dump->parsed() || dump_flag) {
            if (const char* env = std::getenv("PVQA_OUTPUT_DIR"); env && !cmd_dump->parsed())
                dump_dir = env;
            dump_bundled_tables(dump_dir);
            std::cout << "wrote tables to " << dump_dir << "\n";
            return 0;
        }
        std::cerr << app.help() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
