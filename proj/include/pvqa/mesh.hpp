#pragma once

#include <array>
#include <span>
#include <utility>

#include "pvqa/linalg.hpp"

namespace pvqa {

/// Which triangular MZI mesh a phase setting drives. The pump splitter feeds
/// the four sources; the idler/signal meshes realize projections onto the
/// detected output mode.
enum class Stage { Pump, Idler, Signal };

/// The seven knobs of one triangular mesh: three MZI phases and the four
/// per-mode phase shifters of its straight arm array. Angles are stored as
/// the canonical representative in (-pi, pi].
struct PhaseVector {
    std::array<double, 3> theta{};
    std::array<double, 4> phi{};
    Stage stage = Stage::Pump;
};

/// Wraps an angle into (-pi, pi].
double canonical_angle(double a);

PhaseVector make_phase_vector(Stage stage, std::array<double, 3> theta,
                              std::array<double, 4> phi = {0.0, 0.0, 0.0, 0.0});

/// Full MZI unitary (two balanced MMIs around one internal phase shifter):
///   i e^{±iθ/2} [ ±sin(θ/2)  cos(θ/2) ; cos(θ/2)  ∓sin(θ/2) ]
/// `sign` is +1 or -1 depending on which internal arm carries the shifter.
Mat2 mzi_unitary(double theta, int sign);

/// Effective MZI transfer block at calibrated phase θ, with the common
/// i e^{iθ} factor referenced out: [ sinθ  cosθ ; cosθ  -sinθ ].
/// Equals mzi_unitary(2θ, +1) up to that factor; the thermal calibration
/// fringe 1/2 [1 ± cos 2θ] measures exactly this θ.
Mat2 mzi_transfer(double theta);

/// Embeds a 2x2 block acting on modes (k, k+1) of an m-mode network,
/// identity elsewhere. k is 1-based, 1 <= k < m.
Eigen::MatrixXcd embed(const Mat2& u, int k, int m);

/// 4x4 transfer matrix of the pump-splitting mesh, output phases included:
///   U = P(φ) · T34(θ3) · T12(θ2) · T23(θ1)
/// Column 2 is the source amplitude vector since the pump enters mode 2.
Mat4 pump_mesh_matrix(const PhaseVector& p);

/// 4x4 transfer matrix of an idler/signal projection mesh, input phases
/// included:
///   U = T23(θ1) · T12(θ2) · T34(θ3) · P(φ)
/// Row 2 is the only physically read row (the detected output mode).
Mat4 projection_mesh_matrix(const PhaseVector& p);

/// Source amplitudes produced by a pump mesh setting:
///   α1 = e^{iφ1} sinθ1 cosθ2,  α2 = -e^{iφ2} sinθ1 sinθ2,
///   α3 = e^{iφ3} cosθ1 sinθ3,  α4 = e^{iφ4} cosθ1 cosθ3.
/// Always unit-norm.
Vec4 amplitudes_from_phases(const PhaseVector& p);

/// Inverse problem: phases such that row 2 of the projection mesh equals
/// conj(beta), i.e. the mesh projects onto the state |beta>. Degenerate
/// sectors (|β1|²+|β2|² = 0 or |β3|²+|β4|² = 0) pin the unconstrained MZI
/// phase to zero so the output is deterministic.
PhaseVector phases_for_projector(const Vec4& beta, Stage stage);

/// Thermal phase shifter response θ = w·I² + θ0 with fringe orientation ±1.
struct CalibrationCurve {
    double w_ps = 0.0;    // rad per squared current unit
    double theta0 = 0.0;  // spurious offset, rad
    int sign = +1;
};

double current_to_phase(const CalibrationCurve& c, double current);

/// Normalized output intensity of a calibration fringe: 1/2 [1 + s·cos 2θ].
double fringe_intensity(double theta, int sign);

struct CalibrationFit {
    CalibrationCurve curve;
    double rms = 0.0;  // residual of the fitted fringe
};

/// Fits (I², intensity) samples to the fringe model. Needs at least four
/// samples spanning half a fringe. The (sign, θ0) degeneracy is resolved by
/// normalizing θ0 into (-pi/4, pi/4].
CalibrationFit fit_calibration(std::span<const std::pair<double, double>> samples);

}  // namespace pvqa
