#include "pvqa/mesh.hpp"

#include <cmath>
#include <stdexcept>

#include "pvqa/errors.hpp"

namespace pvqa {

namespace {

const cplx kI(0.0, 1.0);

cplx expi(double a) { return {std::cos(a), std::sin(a)}; }

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double canonical_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

PhaseVector make_phase_vector(Stage stage, std::array<double, 3> theta,
                              std::array<double, 4> phi) {
    PhaseVector p;
    p.stage = stage;
    for (int i = 0; i < 3; ++i) {
        require_finite(theta[i], "theta");
        p.theta[i] = canonical_angle(theta[i]);
    }
    for (int i = 0; i < 4; ++i) {
        require_finite(phi[i], "phi");
        p.phi[i] = canonical_angle(phi[i]);
    }
    return p;
}

Mat2 mzi_unitary(double theta, int sign) {
    require_finite(theta, "theta");
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    double s = std::sin(theta / 2.0);
    double c = std::cos(theta / 2.0);
    cplx pre = kI * expi(sign * theta / 2.0);
    Mat2 u;
    u << sign * s, c, c, -sign * s;
    return pre * u;
}

Mat2 mzi_transfer(double theta) {
    require_finite(theta, "theta");
    double s = std::sin(theta);
    double c = std::cos(theta);
    Mat2 u;
    u << s, c, c, -s;
    return u;
}

Eigen::MatrixXcd embed(const Mat2& u, int k, int m) {
    if (m < 2) throw std::out_of_range("embed: need at least two modes");
    if (k < 1 || k >= m) throw std::out_of_range("embed: mode index out of range");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m, m);
    out.block(k - 1, k - 1, 2, 2) = u;
    return out;
}

namespace {

Mat4 phase_diag(const std::array<double, 4>& phi) {
    Mat4 d = Mat4::Zero();
    for (int i = 0; i < 4; ++i) d(i, i) = expi(phi[i]);
    return d;
}

Mat4 transfer4(double theta, int k) { return embed(mzi_transfer(theta), k, 4); }

}  // namespace

Mat4 pump_mesh_matrix(const PhaseVector& p) {
    if (p.stage != Stage::Pump)
        throw std::invalid_argument("pump_mesh_matrix: phase vector is not a pump setting");
    return phase_diag(p.phi) * transfer4(p.theta[2], 3) * transfer4(p.theta[1], 1) *
           transfer4(p.theta[0], 2);
}

Mat4 projection_mesh_matrix(const PhaseVector& p) {
    if (p.stage == Stage::Pump)
        throw std::invalid_argument(
            "projection_mesh_matrix: phase vector is not an idler/signal setting");
    return transfer4(p.theta[0], 2) * transfer4(p.theta[1], 1) * transfer4(p.theta[2], 3) *
           phase_diag(p.phi);
}

Vec4 amplitudes_from_phases(const PhaseVector& p) {
    if (p.stage != Stage::Pump)
        throw std::invalid_argument("amplitudes_from_phases: phase vector is not a pump setting");
    double s1 = std::sin(p.theta[0]), c1 = std::cos(p.theta[0]);
    double s2 = std::sin(p.theta[1]), c2 = std::cos(p.theta[1]);
    double s3 = std::sin(p.theta[2]), c3 = std::cos(p.theta[2]);
    Vec4 a;
    a << expi(p.phi[0]) * s1 * c2, -expi(p.phi[1]) * s1 * s2, expi(p.phi[2]) * c1 * s3,
        expi(p.phi[3]) * c1 * c3;
    return a;
}

PhaseVector phases_for_projector(const Vec4& beta, Stage stage) {
    if (stage == Stage::Pump)
        throw std::invalid_argument("phases_for_projector: target stage must be idler or signal");
    double norm = beta.norm();
    if (norm < 1e-12) throw std::invalid_argument("phases_for_projector: zero target vector");
    Vec4 b = beta / norm;

    double r12 = std::hypot(std::abs(b(0)), std::abs(b(1)));
    double r34 = std::hypot(std::abs(b(2)), std::abs(b(3)));

    std::array<double, 3> theta{};
    theta[0] = std::atan2(r12, r34);
    theta[1] = r12 > 0 ? std::atan2(std::abs(b(1)), std::abs(b(0))) : 0.0;
    theta[2] = r34 > 0 ? std::atan2(std::abs(b(2)), std::abs(b(3))) : 0.0;

    // Row 2 of the mesh reads (e^{iφ1}s1c2, -e^{iφ2}s1s2, e^{iφ3}c1s3,
    // e^{iφ4}c1c3); choose the φ so it equals conj(b) entrywise.
    std::array<double, 4> phi{};
    phi[0] = std::abs(b(0)) > 0 ? -std::arg(b(0)) : 0.0;
    phi[1] = std::abs(b(1)) > 0 ? kPi - std::arg(b(1)) : 0.0;
    phi[2] = std::abs(b(2)) > 0 ? -std::arg(b(2)) : 0.0;
    phi[3] = std::abs(b(3)) > 0 ? -std::arg(b(3)) : 0.0;

    return make_phase_vector(stage, theta, phi);
}

double current_to_phase(const CalibrationCurve& c, double current) {
    return c.w_ps * current * current + c.theta0;
}

double fringe_intensity(double theta, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    return 0.5 * (1.0 + sign * std::cos(2.0 * theta));
}

namespace {

struct LinearFringeFit {
    double a = 0.0, b = 0.0;  // y ≈ 1/2 + a cos(2wu) + b sin(2wu)
    double rss = 0.0;
};

LinearFringeFit fit_at_frequency(std::span<const std::pair<double, double>> samples, double w) {
    double caa = 0, cbb = 0, cab = 0, ya = 0, yb = 0;
    for (auto& [u, y] : samples) {
        double cu = std::cos(2.0 * w * u);
        double su = std::sin(2.0 * w * u);
        double r = y - 0.5;
        caa += cu * cu;
        cbb += su * su;
        cab += cu * su;
        ya += r * cu;
        yb += r * su;
    }
    double det = caa * cbb - cab * cab;
    LinearFringeFit f;
    if (std::abs(det) < 1e-14) {
        f.a = caa > 1e-14 ? ya / caa : 0.0;
        f.b = 0.0;
    } else {
        f.a = (cbb * ya - cab * yb) / det;
        f.b = (caa * yb - cab * ya) / det;
    }
    f.rss = 0.0;
    for (auto& [u, y] : samples) {
        double m = 0.5 + f.a * std::cos(2.0 * w * u) + f.b * std::sin(2.0 * w * u);
        f.rss += (y - m) * (y - m);
    }
    return f;
}

}  // namespace

CalibrationFit fit_calibration(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 4)
        throw numeric_error("fit_calibration: need at least four samples");
    double umin = samples[0].first, umax = samples[0].first;
    double gap = 0.0;
    for (auto& [u, y] : samples) {
        require_finite(u, "sample");
        require_finite(y, "sample");
        umin = std::min(umin, u);
        umax = std::max(umax, u);
    }
    double span = umax - umin;
    if (span <= 0.0) throw numeric_error("fit_calibration: degenerate samples (constant I^2)");
    gap = span / static_cast<double>(samples.size() - 1);

    // Coarse scan over the tuning efficiency, then golden-section refinement.
    // Half a fringe over the span bounds w from below; the mean sample
    // spacing bounds it from above (Nyquist).
    double wlo = 0.25 * kPi / span;
    double whi = 0.5 * kPi / gap;
    int ngrid = 4000;
    double best_w = wlo, best_rss = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= ngrid; ++i) {
        double w = wlo + (whi - wlo) * i / ngrid;
        double rss = fit_at_frequency(samples, w).rss;
        if (rss < best_rss) {
            best_rss = rss;
            best_w = w;
        }
    }
    double step = (whi - wlo) / ngrid;
    double lo = std::max(wlo, best_w - 2 * step), hi = std::min(whi, best_w + 2 * step);
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) * 0.381966;
        double m2 = hi - (hi - lo) * 0.381966;
        if (fit_at_frequency(samples, m1).rss < fit_at_frequency(samples, m2).rss)
            hi = m2;
        else
            lo = m1;
    }
    best_w = 0.5 * (lo + hi);
    LinearFringeFit lin = fit_at_frequency(samples, best_w);

    // a = (s/2)cos2θ0, b = -(s/2)sin2θ0; the (sign, θ0) pair is fixed by
    // normalizing θ0 into (-pi/4, pi/4].
    double amp = std::hypot(lin.a, lin.b);
    if (amp < 1e-9) throw numeric_error("fit_calibration: no fringe contrast in samples");
    double two_theta0 = std::atan2(-lin.b, lin.a);
    int sign = +1;
    if (two_theta0 > kPi / 2.0) {
        two_theta0 -= kPi;
        sign = -1;
    } else if (two_theta0 <= -kPi / 2.0) {
        two_theta0 += kPi;
        sign = -1;
    }

    CalibrationFit out;
    out.curve.w_ps = best_w;
    out.curve.theta0 = two_theta0 / 2.0;
    out.curve.sign = sign;
    out.rms = std::sqrt(lin.rss / static_cast<double>(samples.size()));

    if (best_w * span < 0.45 * kPi)
        throw numeric_error("fit_calibration: samples span less than half a fringe");
    return out;
}

}  // namespace pvqa
