#include "pvqa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "pvqa/errors.hpp"

namespace pvqa {

namespace {

using tables::Triplet;

std::array<Vec4, 4> mesh_basis(const Triplet& theta, const std::array<double, 4>& phi) {
    // The four rows of a projection mesh are orthonormal, so they provide a
    // complete setting containing the detected row.
    Mat4 u = projection_mesh_matrix(make_phase_vector(Stage::Idler, theta, phi));
    std::array<Vec4, 4> kets;
    for (int m = 0; m < 4; ++m) kets[m] = u.row(m).conjugate().transpose();
    return kets;
}

Eigen::VectorXd setting_probabilities(const TwoQuquartState& state,
                                      const MeasurementSetting& setting,
                                      const std::optional<NoiseConfig>& noise,
                                      std::uint64_t eval_index) {
    if (!noise) return probability_vector(state, setting);
    CountsRecord rec = sample_counts(probability_vector(state, setting), *noise, setting.id,
                                     eval_index);
    return estimate_probabilities(rec, *noise);
}

const tables::InterferencePair& find_pair(const std::string& label) {
    for (const auto& p : tables::interference_settings())
        if (label == p.label) return p;
    throw std::invalid_argument("heralded_interference: unknown source pair " + label);
}

void run_indexed(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> default_phase_grid(int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i) g[i] = -kPi + 2.0 * kPi * i / (points - 1);
    return g;
}

FringeScan heralded_interference(const std::string& pair, double epsilon,
                                 const std::vector<double>& grid,
                                 const std::optional<NoiseConfig>& noise,
                                 const std::array<double, 4>& delta) {
    const auto& cfgrow = find_pair(pair);
    if (grid.size() < 4) throw std::invalid_argument("heralded_interference: grid too small");

    TwoQuquartState state =
        prepare_state(make_phase_vector(Stage::Pump, cfgrow.theta), delta, epsilon);

    FringeScan scan;
    scan.pair = pair;
    scan.phase_grid = grid;
    scan.normalized_cc.resize(grid.size());

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::array<double, 4> phi_i{}, phi_s{};
        auto& swept = cfgrow.swept_stage == Stage::Idler ? phi_i : phi_s;
        swept[cfgrow.swept_mode - 1] = grid[i];
        auto setting = setting_from_bases("fringe-" + pair, mesh_basis(cfgrow.theta, phi_i),
                                          mesh_basis(cfgrow.theta, phi_s));
        Eigen::VectorXd p = setting_probabilities(state, setting, noise, i);
        scan.normalized_cc[i] = p(1 * 4 + 1);  // detected (2, 2) cell
    }

    // Linear least squares on 1, cos, sin.
    Eigen::MatrixXd a(grid.size(), 3);
    Eigen::VectorXd y(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = std::cos(grid[i]);
        a(i, 2) = std::sin(grid[i]);
        y(i) = scan.normalized_cc[i];
    }
    Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
    if (c.allFinite() && c(0) > 0.0) {
        scan.fit.valid = true;
        scan.fit.offset = c(0);
        scan.fit.amplitude = std::hypot(c(1), c(2));
        scan.fit.phase0 = std::atan2(-c(2), c(1));
        scan.visibility = std::min(1.0, scan.fit.amplitude / scan.fit.offset);
    }
    return scan;
}

double epsilon_from_visibility(double visibility) { return visibility; }

double dimension_witness(const Eigen::MatrixXd& p1, const Eigen::MatrixXd& p2) {
    const auto d = p1.rows();
    double dinv = 0.0;
    for (Eigen::Index b1 = 0; b1 < d; ++b1) {
        for (Eigen::Index b2 = 0; b2 < d; ++b2) {
            double inner = 0.0;
            for (Eigen::Index a = 0; a < d; ++a)
                inner += std::sqrt(std::max(0.0, p1(a, b1)) * std::max(0.0, p2(a, b2)));
            dinv += inner * inner;
        }
    }
    if (dinv <= 0.0) throw numeric_error("dimension_witness: vanishing correlations");
    return 1.0 / dinv;
}

DimCertResult certified_dimension(int d, const std::string& sources, double epsilon,
                                  const std::optional<NoiseConfig>& noise) {
    const tables::EntangledPrep* prep = nullptr;
    for (const auto& p : tables::entangled_prep_settings())
        if (p.d == d && sources == p.label) prep = &p;
    const tables::DimWitnessSetting* meas = nullptr;
    for (const auto& m : tables::dim_witness_settings())
        if (m.d == d && sources == m.label) meas = &m;
    if (!prep || !meas)
        throw std::invalid_argument("certified_dimension: no bundled setting for d=" +
                                    std::to_string(d) + " sources=" + sources);

    TwoQuquartState state =
        prepare_state(make_phase_vector(Stage::Pump, prep->theta_pump), {}, epsilon);

    auto build = [&](const std::vector<Triplet>& alice, const std::vector<Triplet>& bob,
                     const std::string& id) {
        std::vector<ProjectorPair> pairs;
        for (const auto& ta : alice)
            for (const auto& tb : bob)
                pairs.push_back({tables::projector_ket(ta), tables::projector_ket(tb)});
        return setting_from_pairs(id, std::move(pairs), d, d);
    };
    auto s1 = build(meas->alice, meas->bob1, "dim-" + sources + "-1");
    auto s2 = build(meas->alice, meas->bob2, "dim-" + sources + "-2");

    auto correlation = [&](const MeasurementSetting& s, std::uint64_t idx) {
        Eigen::VectorXd p = setting_probabilities(state, s, noise, idx);
        double sum = p.sum();
        if (sum <= 0.0) throw numeric_error("certified_dimension: no coincidences recorded");
        Eigen::MatrixXd m(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) m(a, b) = p(a * d + b) / sum;
        return m;
    };

    DimCertResult out;
    out.d = d;
    out.sources = sources;
    out.p1 = correlation(s1, 0);
    out.p2 = correlation(s2, 1);
    out.certified_dimension = dimension_witness(out.p1, out.p2);
    return out;
}

double fidelity_score(const Eigen::Matrix4d& m, int source) {
    if (source < 1 || source > 4) throw std::out_of_range("fidelity_score: source out of range");
    double denom = m.norm();
    if (denom <= 0.0) throw numeric_error("fidelity_score: empty matrix");
    double t = m(source - 1, source - 1) / denom;
    return t * t;
}

double projector_fidelity(int source, const std::optional<NoiseConfig>& noise, double epsilon) {
    if (source < 1 || source > 4) throw std::out_of_range("projector_fidelity: source out of range");
    const auto& pump = tables::single_source_phases()[source - 1];
    TwoQuquartState state =
        prepare_state(make_phase_vector(Stage::Pump, pump), {}, epsilon);
    auto basis = computational_basis();
    auto setting = setting_from_bases("fidelity-" + std::to_string(source), basis, basis);
    Eigen::VectorXd p = setting_probabilities(state, setting, noise, 0);
    Eigen::Matrix4d m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m(a, b) = p(a * 4 + b);
    return fidelity_score(m, source);
}

PhaseVector ucc_pump_phases(double theta) {
    return make_phase_vector(Stage::Pump, {theta, kPi / 2.0, kPi / 2.0});
}

CompiledObservable compile_h2(double r_angstrom) {
    // The bond length is part of the setting id so sampled runs at
    // different radii draw independent noise streams.
    char prefix[32];
    std::snprintf(prefix, sizeof(prefix), "h2-%g-cg", r_angstrom);
    return compile_observable(load_h2_table(r_angstrom), prefix);
}

std::vector<ScanPoint> h2_theta_scan(double r_angstrom, const std::vector<double>& grid,
                                     const std::optional<NoiseConfig>& noise,
                                     const EvalLogger& log) {
    CompiledObservable obs = compile_h2(r_angstrom);
    std::vector<ScanPoint> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        TwoQuquartState state = prepare_state(ucc_pump_phases(grid[i]));
        CostEvaluation ev = evaluate(obs, state, noise, i);
        out[i] = {grid[i], ev.value, ev.std_err};
        if (log) {
            Eigen::VectorXd p(1);
            p(0) = grid[i];
            log(i, p, ev);
        }
    }
    return out;
}

SinusoidFit fit_energy_sinusoid(const std::vector<ScanPoint>& points) {
    if (points.size() < 3) throw std::invalid_argument("fit_energy_sinusoid: need >= 3 points");
    Eigen::MatrixXd a(points.size(), 3);
    Eigen::VectorXd y(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = std::cos(2.0 * points[i].theta);
        a(i, 2) = std::sin(2.0 * points[i].theta);
        y(i) = points[i].energy;
    }
    Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
    SinusoidFit fit;
    fit.g0 = c(0);
    fit.g1 = c(1);
    fit.g2 = c(2);
    fit.e_min = fit.g0 - std::hypot(fit.g1, fit.g2);
    fit.theta_min = 0.5 * std::atan2(-fit.g2, -fit.g1);
    return fit;
}

std::vector<DissociationPoint> h2_dissociation(const std::vector<double>& radii,
                                               const std::optional<NoiseConfig>& noise,
                                               int fit_points, int threads) {
    std::vector<double> grid(fit_points);
    for (int i = 0; i < fit_points; ++i)
        grid[i] = -kPi / 4.0 + (3.0 * kPi / 4.0) * i / (fit_points - 1);
    std::vector<DissociationPoint> out(radii.size());
    run_indexed(static_cast<int>(radii.size()), threads, [&](int i) {
        auto scan = h2_theta_scan(radii[i], grid, noise);
        SinusoidFit fit = fit_energy_sinusoid(scan);
        out[i] = {radii[i], fit.e_min, fit.theta_min};
    });
    return out;
}

namespace {

CostFn h2_cost_fn(const CompiledObservable& obs, const std::optional<NoiseConfig>& noise,
                  const EvalLogger& log) {
    return [&obs, noise, log](const Eigen::VectorXd& params, std::uint64_t idx) {
        TwoQuquartState state = prepare_state(ucc_pump_phases(params(0)));
        CostEvaluation ev = evaluate(obs, state, noise, idx);
        if (log) log(idx, params, ev);
        return CostSample{ev.value, ev.std_err};
    };
}

}  // namespace

OptRun run_vqe_bayesian(double r_angstrom, const std::optional<NoiseConfig>& noise,
                        const GpConfig& gp, const EvalLogger& log) {
    CompiledObservable obs = compile_h2(r_angstrom);
    return bayesian_optimize(h2_cost_fn(obs, noise, log), 0.0, gp);
}

OptRun run_vqe_gradient(double r_angstrom, const std::optional<NoiseConfig>& noise,
                        const GdConfig& gd, double init_theta, const EvalLogger& log) {
    CompiledObservable obs = compile_h2(r_angstrom);
    Eigen::VectorXd init(1);
    init(0) = init_theta;
    return gradient_descent(h2_cost_fn(obs, noise, log), init, gd);
}

const std::array<VqfCandidate, 4>& vqf_candidates() {
    static const std::array<VqfCandidate, 4> c = {{
        {"0110", 2, 3, 3, 5},
        {"0101", 2, 2, 3, 3},
        {"1101", 4, 2, 7, 3},
        {"1110", 4, 3, 7, 5},
    }};
    return c;
}

CompiledObservable compile_vqf(int n) {
    WeightedObservable obs = build_vqf_hamiltonian(n);
    std::vector<ProjectorPair> pairs;
    std::vector<std::array<int, 2>> labels;
    for (const auto& e : tables::vqf_projector_map()) {
        pairs.push_back({tables::projector_ket(e.theta_i), tables::projector_ket(e.theta_s)});
        labels.push_back({e.n1, e.n2});
    }
    auto setting = setting_from_pairs("vqf-" + std::to_string(n), std::move(pairs), 4, 4);
    return compile_diagonal_with_pairs(obs, std::move(setting), labels);
}

GdConfig vqf_default_gd() {
    GdConfig gd;
    gd.epsilon_fd = 0.05;
    gd.eta = 8e-4;
    gd.max_iters = 200;
    gd.tol_param = 0.01;
    gd.tol_cost = 0.5;
    return gd;
}

VqfRun run_vqf(int n, const std::optional<NoiseConfig>& noise, const GdConfig& gd,
               const EvalLogger& log) {
    CompiledObservable obs = compile_vqf(n);
    CostFn fn = [&obs, noise, log](const Eigen::VectorXd& params, std::uint64_t idx) {
        auto pump = make_phase_vector(Stage::Pump, {params(0), params(1), params(2)});
        CostEvaluation ev = evaluate(obs, prepare_state(pump), noise, idx);
        if (log) log(idx, params, ev);
        return CostSample{ev.value, ev.std_err};
    };

    Eigen::VectorXd democratic(3);
    democratic << kPi / 4.0, -kPi / 4.0, kPi / 4.0;

    VqfRun out;
    out.n = n;
    out.run = gradient_descent(fn, democratic, gd);

    auto best_pump = make_phase_vector(
        Stage::Pump, {out.run.best.params(0), out.run.best.params(1), out.run.best.params(2)});
    out.final_alpha = amplitudes_from_phases(best_pump);
    int arg = 0;
    for (int m = 1; m < 4; ++m)
        if (std::norm(out.final_alpha(m)) > std::norm(out.final_alpha(arg))) arg = m;
    out.p = vqf_candidates()[arg].p;
    out.q = vqf_candidates()[arg].q;
    return out;
}

}  // namespace pvqa
