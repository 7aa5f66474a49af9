#pragma once

#include <string>
#include <vector>

#include "pvqa/mesh.hpp"

namespace pvqa {

/// Post-selected two-ququart state after pair generation and routing:
/// sum_m alpha_m e^{i delta_m} |m>_i |m>_s, mixed with weight (1-epsilon)
/// into the which-source-dephased state sum_m |alpha_m|^2 |m,m><m,m|.
/// epsilon = 1 is a perfectly indistinguishable source set.
struct TwoQuquartState {
    Vec4 alpha = Vec4::Zero();
    std::array<double, 4> delta{};
    double epsilon = 1.0;
};

TwoQuquartState prepare_state(const PhaseVector& pump, std::array<double, 4> delta = {},
                              double epsilon = 1.0);

/// One idler/signal projection pair; both vectors are the kets being
/// projected onto (the mesh realizes the bra conj(xi) on its detected row).
struct ProjectorPair {
    Vec4 xi_i = Vec4::Zero();
    Vec4 xi_s = Vec4::Zero();
};

/// Coincidence probability of a projector pair on the mixed state:
///   eps * |sum_m alpha_m e^{i delta_m} conj(xi_i[m]) conj(xi_s[m])|^2
/// + (1-eps) * sum_m |alpha_m|^2 |xi_i[m]|^2 |xi_s[m]|^2.
double coincidence_probability(const TwoQuquartState& state, const ProjectorPair& proj);

/// Same probability evaluated through the detection route: complete each
/// projector to a mesh unitary with conj(xi) on the detected row, transform
/// the full 16-dim density matrix and read the detected-mode population.
double detection_projector_probability(const TwoQuquartState& state, const ProjectorPair& proj);

/// A list of projector pairs acquired under one hardware setting and
/// normalized by one total count. Usually the 4x4 grid built from two
/// orthonormal bases; the factoring experiment uses a relabeled list and the
/// dimension witness uses d x d grids.
struct MeasurementSetting {
    std::string id;
    std::vector<ProjectorPair> pairs;
    int rows = 0;
    int cols = 0;

    const ProjectorPair& at(int a, int b) const { return pairs[a * cols + b]; }
};

MeasurementSetting setting_from_bases(std::string id, const std::array<Vec4, 4>& idler,
                                      const std::array<Vec4, 4>& signal);

MeasurementSetting setting_from_pairs(std::string id, std::vector<ProjectorPair> pairs, int rows,
                                      int cols);

/// Exact per-pair probabilities of a setting, flattened row-major.
Eigen::VectorXd probability_vector(const TwoQuquartState& state, const MeasurementSetting& setting);

/// 4x4 probability tensor p[m1][m2] for a full two-basis setting.
Eigen::Matrix4d probability_tensor(const TwoQuquartState& state,
                                   const MeasurementSetting& setting);

/// Computational-basis projection vectors e_1..e_4.
std::array<Vec4, 4> computational_basis();

}  // namespace pvqa
