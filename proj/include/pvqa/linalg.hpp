#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pvqa {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec4 = Eigen::Vector4cd;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Largest entry magnitude of a matrix expression.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

/// ‖U†U − 1‖_max, zero for a unitary matrix.
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& u) {
    using Plain = typename Derived::PlainObject;
    Plain g = u.adjoint() * u;
    g -= Plain::Identity(g.rows(), g.cols());
    return max_abs(g);
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double tol = 1e-12) {
    return unitarity_defect(u) <= tol;
}

/// max entry distance between a and e^{iγ}·b, with γ chosen to align the
/// two (Frobenius inner product). Observables are insensitive to γ, so two
/// matrices are "equal" when this vanishes.
template <typename DerivedA, typename DerivedB>
double phase_aligned_distance(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
    cplx ip = (b.conjugate().cwiseProduct(a.derived())).sum();
    cplx phase = std::abs(ip) > 0 ? ip / std::abs(ip) : cplx(1.0, 0.0);
    return max_abs(a.derived() - phase * b.derived());
}

/// Kronecker product for small dense complex matrices.
template <typename DerivedA, typename DerivedB>
Eigen::MatrixXcd kron(const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b.derived();
    return out;
}

}  // namespace pvqa
