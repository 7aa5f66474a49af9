#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pvqa/cost.hpp"
#include "pvqa/optimize.hpp"
#include "pvqa/tables.hpp"

namespace pvqa {

/// Optional sink for every cost evaluation an experiment performs.
using EvalLogger =
    std::function<void(std::uint64_t eval_index, const Eigen::VectorXd& params,
                       const CostEvaluation& ev)>;

// --- Heralded interference ---------------------------------------------------

struct FringeFit {
    double amplitude = 0.0;  // peak-to-mean amplitude of the fitted sinusoid
    double offset = 0.0;
    double phase0 = 0.0;
    bool valid = false;
};

struct FringeScan {
    std::string pair;
    std::vector<double> phase_grid;
    std::vector<double> normalized_cc;
    FringeFit fit;
    double visibility = 0.0;  // (max-min)/(max+min) of the fitted sinusoid
};

std::vector<double> default_phase_grid(int points = 41);

/// Sweeps one straight-arm phase of a balanced two-source state and records
/// the detected coincidence fraction. pair is "2-3", "1-3" or "3-4".
FringeScan heralded_interference(const std::string& pair, double epsilon,
                                 const std::vector<double>& grid,
                                 const std::optional<NoiseConfig>& noise = std::nullopt,
                                 const std::array<double, 4>& delta = {});

/// For balanced two-source states the fringe visibility equals the source
/// indistinguishability weight, so the inverse inference is the identity.
double epsilon_from_visibility(double visibility);

// --- Certified dimension -----------------------------------------------------

struct DimCertResult {
    int d = 0;
    std::string sources;
    Eigen::MatrixXd p1, p2;  // d x d correlation matrices, each unit sum
    double certified_dimension = 0.0;
};

/// Entanglement-dimension witness from two correlation matrices.
DimCertResult certified_dimension(int d, const std::string& sources, double epsilon,
                                  const std::optional<NoiseConfig>& noise = std::nullopt);

/// The witness value alone, from two unit-sum correlation matrices.
double dimension_witness(const Eigen::MatrixXd& p1, const Eigen::MatrixXd& p2);

// --- Projector fidelity ------------------------------------------------------

/// Pumps a single source, samples the computational setting into a 4x4
/// matrix M and scores |M[m,m]| / ||M||_F squared.
double projector_fidelity(int source, const std::optional<NoiseConfig>& noise = std::nullopt,
                          double epsilon = 1.0);

/// The same score for an explicit matrix, exposed for direct checks.
double fidelity_score(const Eigen::Matrix4d& m, int source);

// --- Hydrogen ----------------------------------------------------------------

/// Pump setting preparing cos(theta)|3,3> - sin(theta)|2,2>.
PhaseVector ucc_pump_phases(double theta);

CompiledObservable compile_h2(double r_angstrom);

struct ScanPoint {
    double theta = 0.0;
    double energy = 0.0;
    double std_err = 0.0;
};

std::vector<ScanPoint> h2_theta_scan(double r_angstrom, const std::vector<double>& grid,
                                     const std::optional<NoiseConfig>& noise = std::nullopt,
                                     const EvalLogger& log = nullptr);

struct SinusoidFit {
    double g0 = 0.0, g1 = 0.0, g2 = 0.0;  // E = g0 + g1 cos 2theta + g2 sin 2theta
    double e_min = 0.0;
    double theta_min = 0.0;
};

SinusoidFit fit_energy_sinusoid(const std::vector<ScanPoint>& points);

struct DissociationPoint {
    double r = 0.0;
    double e_min = 0.0;
    double theta_min = 0.0;
};

std::vector<DissociationPoint> h2_dissociation(const std::vector<double>& radii,
                                               const std::optional<NoiseConfig>& noise = std::nullopt,
                                               int fit_points = 25, int threads = 0);

OptRun run_vqe_bayesian(double r_angstrom, const std::optional<NoiseConfig>& noise,
                        const GpConfig& gp, const EvalLogger& log = nullptr);

OptRun run_vqe_gradient(double r_angstrom, const std::optional<NoiseConfig>& noise,
                        const GdConfig& gd, double init_theta = 0.0,
                        const EvalLogger& log = nullptr);

// --- Factoring ---------------------------------------------------------------

/// Admissible four-qubit states of the restricted factoring ansatz and the
/// (p, q) pair each one encodes, in amplitude order.
struct VqfCandidate {
    const char* bits;
    int n1, n2;  // labeled outcome cell
    int p, q;
};

const std::array<VqfCandidate, 4>& vqf_candidates();

CompiledObservable compile_vqf(int n);

/// Defaults tuned to the integer-scale factoring landscape; the shared
/// GdConfig default learning rate is sized for Hartree-scale costs and
/// diverges here.
GdConfig vqf_default_gd();

struct VqfRun {
    int n = 0;
    OptRun run;
    Vec4 final_alpha = Vec4::Zero();
    int p = 0, q = 0;
};

VqfRun run_vqf(int n, const std::optional<NoiseConfig>& noise, const GdConfig& gd,
               const EvalLogger& log = nullptr);

}  // namespace pvqa
