#pragma once

// Independent dense 16-dim oracle used by the tests. Everything here is
// built from scratch (explicit index arithmetic, no library kron or group
// machinery) so it can check the production path.

#include <array>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "pvqa/state.hpp"

namespace oracle {

using cplx = std::complex<double>;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

inline Eigen::Matrix2cd pauli(char p) {
    Eigen::Matrix2cd m;
    const cplx i(0.0, 1.0);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

/// 16x16 matrix of a four-factor string, qubit 1 most significant.
inline Mat16 string16(const std::string& s) {
    std::array<Eigen::Matrix2cd, 4> f = {pauli(s[0]), pauli(s[1]), pauli(s[2]), pauli(s[3])};
    Mat16 out;
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            cplx v = 1.0;
            for (int q = 0; q < 4; ++q) {
                int rb = (r >> (3 - q)) & 1;
                int cb = (c >> (3 - q)) & 1;
                v *= f[q](rb, cb);
            }
            out(r, c) = v;
        }
    }
    return out;
}

inline Mat16 observable16(const pvqa::WeightedObservable& obs) {
    Mat16 h = Mat16::Zero();
    for (const auto& t : obs.terms) h += t.coeff * string16(t.ops.str());
    return h;
}

/// Correlated pure state sum_m alpha_m e^{i delta_m} |m>|m>, index
/// (m1-1)*4 + (m2-1).
inline Vec16 state16(const pvqa::TwoQuquartState& s) {
    Vec16 psi = Vec16::Zero();
    for (int m = 0; m < 4; ++m)
        psi(m * 4 + m) = s.alpha(m) * std::exp(cplx(0.0, s.delta[m]));
    return psi;
}

/// Full density matrix including the which-source-dephased mixture.
inline Mat16 density16(const pvqa::TwoQuquartState& s) {
    Vec16 psi = state16(s);
    Mat16 rho = s.epsilon * (psi * psi.adjoint());
    for (int m = 0; m < 4; ++m) {
        Vec16 e = Vec16::Zero();
        e(m * 4 + m) = 1.0;
        rho += (1.0 - s.epsilon) * std::norm(s.alpha(m)) * (e * e.adjoint());
    }
    return rho;
}

inline Vec16 product16(const pvqa::Vec4& a, const pvqa::Vec4& b) {
    Vec16 v;
    for (int m1 = 0; m1 < 4; ++m1)
        for (int m2 = 0; m2 < 4; ++m2) v(m1 * 4 + m2) = a(m1) * b(m2);
    return v;
}

/// tr(rho |xi_i xi_s><xi_i xi_s|), the reference coincidence probability.
inline double pair_probability(const pvqa::TwoQuquartState& s, const pvqa::ProjectorPair& p) {
    Vec16 proj = product16(p.xi_i, p.xi_s);
    return (proj.adjoint() * density16(s) * proj)(0).real();
}

inline Mat16 local16(const pvqa::Mat4& vi, const pvqa::Mat4& vs) {
    Mat16 out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) out(a * 4 + c, b * 4 + d) = vi(a, b) * vs(c, d);
    return out;
}

/// Reduced idler density matrix (trace over the signal ququart).
inline Eigen::Matrix4cd reduced_idler(const Mat16& rho) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) out(a, b) += rho(a * 4 + c, b * 4 + c);
    return out;
}

inline pvqa::Vec4 random_unit4(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    pvqa::Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = cplx(n(g), n(g));
    v.normalize();
    return v;
}

inline pvqa::TwoQuquartState random_state(std::mt19937_64& g, double epsilon = 1.0) {
    std::uniform_real_distribution<double> u(-3.14, 3.14);
    pvqa::TwoQuquartState s;
    s.alpha = random_unit4(g);
    s.delta = {u(g), u(g), u(g), u(g)};
    s.epsilon = epsilon;
    return s;
}

/// Haar-ish random 4x4 unitary from QR of a Gaussian matrix.
inline pvqa::Mat4 random_unitary4(std::mt19937_64& g) {
    std::normal_distribution<double> n;
    pvqa::Mat4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cplx(n(g), n(g));
    Eigen::HouseholderQR<pvqa::Mat4> qr(a);
    pvqa::Mat4 q = qr.householderQ();
    return q;
}

}  // namespace oracle
