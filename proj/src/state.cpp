#include "pvqa/state.hpp"

#include <cmath>
#include <stdexcept>

namespace pvqa {

TwoQuquartState prepare_state(const PhaseVector& pump, std::array<double, 4> delta,
                              double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("prepare_state: epsilon must lie in [0, 1]");
    TwoQuquartState s;
    s.alpha = amplitudes_from_phases(pump);
    for (int m = 0; m < 4; ++m) {
        if (!std::isfinite(delta[m]))
            throw std::invalid_argument("prepare_state: delta must be finite");
        s.delta[m] = delta[m];
    }
    s.epsilon = epsilon;
    return s;
}

double coincidence_probability(const TwoQuquartState& state, const ProjectorPair& proj) {
    cplx coherent(0.0, 0.0);
    double incoherent = 0.0;
    for (int m = 0; m < 4; ++m) {
        cplx am = state.alpha(m) * cplx(std::cos(state.delta[m]), std::sin(state.delta[m]));
        coherent += am * std::conj(proj.xi_i(m)) * std::conj(proj.xi_s(m));
        incoherent += std::norm(state.alpha(m)) * std::norm(proj.xi_i(m)) * std::norm(proj.xi_s(m));
    }
    return state.epsilon * std::norm(coherent) + (1.0 - state.epsilon) * incoherent;
}

namespace {

/// Any unitary whose row `row` equals conj(xi). Householder reflection H
/// maps ph*e_row onto xi (ph aligns phases for conditioning); scaling that
/// row of H by conj(ph) then puts conj(xi) exactly where requested.
Mat4 unitary_with_row(const Vec4& xi, int row) {
    Vec4 x = xi.normalized();
    Vec4 e = Vec4::Zero();
    e(row) = 1.0;
    cplx ph = std::abs(x(row)) > 1e-14 ? x(row) / std::abs(x(row)) : cplx(1.0, 0.0);
    Vec4 v = x - ph * e;
    Mat4 h = Mat4::Identity();
    double vn2 = v.squaredNorm();
    if (vn2 > 1e-28) h -= (2.0 / vn2) * (v * v.adjoint());
    h.row(row) *= std::conj(ph);
    return h;
}

}  // namespace

double detection_projector_probability(const TwoQuquartState& state, const ProjectorPair& proj) {
    const int kDetected = 1;  // output mode |2>, zero-based
    Mat4 ui = unitary_with_row(proj.xi_i, kDetected);
    Mat4 us = unitary_with_row(proj.xi_s, kDetected);

    // Pure branch amplitude on |2>_i |2>_s.
    cplx amp(0.0, 0.0);
    for (int m = 0; m < 4; ++m) {
        cplx am = state.alpha(m) * cplx(std::cos(state.delta[m]), std::sin(state.delta[m]));
        amp += am * ui(kDetected, m) * us(kDetected, m);
    }
    double pure = std::norm(amp);

    double mixed = 0.0;
    for (int m = 0; m < 4; ++m)
        mixed += std::norm(state.alpha(m)) * std::norm(ui(kDetected, m)) *
                 std::norm(us(kDetected, m));

    return state.epsilon * pure + (1.0 - state.epsilon) * mixed;
}

MeasurementSetting setting_from_bases(std::string id, const std::array<Vec4, 4>& idler,
                                      const std::array<Vec4, 4>& signal) {
    MeasurementSetting s;
    s.id = std::move(id);
    s.rows = 4;
    s.cols = 4;
    s.pairs.reserve(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) s.pairs.push_back({idler[a], signal[b]});
    return s;
}

MeasurementSetting setting_from_pairs(std::string id, std::vector<ProjectorPair> pairs, int rows,
                                      int cols) {
    if (rows * cols != static_cast<int>(pairs.size()))
        throw std::invalid_argument("setting_from_pairs: grid shape mismatch");
    MeasurementSetting s;
    s.id = std::move(id);
    s.pairs = std::move(pairs);
    s.rows = rows;
    s.cols = cols;
    return s;
}

Eigen::VectorXd probability_vector(const TwoQuquartState& state,
                                   const MeasurementSetting& setting) {
    Eigen::VectorXd p(setting.pairs.size());
    for (std::size_t j = 0; j < setting.pairs.size(); ++j)
        p(static_cast<Eigen::Index>(j)) = coincidence_probability(state, setting.pairs[j]);
    return p;
}

Eigen::Matrix4d probability_tensor(const TwoQuquartState& state,
                                   const MeasurementSetting& setting) {
    if (setting.rows != 4 || setting.cols != 4)
        throw std::invalid_argument("probability_tensor: setting is not a 4x4 grid");
    Eigen::VectorXd p = probability_vector(state, setting);
    Eigen::Matrix4d t;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) t(a, b) = p(a * 4 + b);
    return t;
}

std::array<Vec4, 4> computational_basis() {
    std::array<Vec4, 4> e;
    for (int m = 0; m < 4; ++m) {
        e[m] = Vec4::Zero();
        e[m](m) = 1.0;
    }
    return e;
}

}  // namespace pvqa
