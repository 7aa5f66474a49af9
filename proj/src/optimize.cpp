#include "pvqa/optimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pvqa/errors.hpp"

namespace pvqa {

namespace {

void validate(const GdConfig& c) {
    if (!(c.epsilon_fd > 0) || !(c.eta > 0) || !(c.tol_param > 0) || !(c.tol_cost > 0) ||
        c.max_iters < 1)
        throw std::invalid_argument("GdConfig: steps, rates and tolerances must be positive");
}

void validate(const GpConfig& c) {
    if (!(c.m_k > 0) || !(c.sigma_k > 0) || !(c.jitter >= 0) || c.max_iters < 1 ||
        c.grid_points < 2 || !(c.hi > c.lo))
        throw std::invalid_argument("GpConfig: invalid hyperparameters or domain");
}

}  // namespace

OptRun gradient_descent(const CostFn& fn, const Eigen::VectorXd& init, const GdConfig& cfg) {
    validate(cfg);
    OptRun run;
    std::uint64_t eval = 0;
    Eigen::VectorXd x = init;
    CostSample c = fn(x, eval++);
    run.trajectory.push_back({x, c.value, c.std_err});

    for (int it = 1; it <= cfg.max_iters; ++it) {
        if (!std::isfinite(c.value)) {
            run.iterations = it - 1;
            break;
        }
        Eigen::VectorXd grad(x.size());
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            Eigen::VectorXd xp = x;
            xp(j) += cfg.epsilon_fd;
            CostSample cp = fn(xp, eval++);
            grad(j) = (cp.value - c.value) / cfg.epsilon_fd;
        }
        Eigen::VectorXd xn = x - cfg.eta * grad;
        CostSample cn = fn(xn, eval++);
        run.trajectory.push_back({xn, cn.value, cn.std_err});
        run.iterations = it;

        double dparam = (xn - x).cwiseAbs().maxCoeff();
        double dcost = std::abs(cn.value - c.value);
        x = xn;
        c = cn;
        if (!std::isfinite(c.value)) break;
        if (dparam < cfg.tol_param && dcost < cfg.tol_cost) {
            run.converged = true;
            break;
        }
    }

    run.best = run.trajectory.front();
    for (const auto& p : run.trajectory)
        if (std::isfinite(p.cost) && p.cost < run.best.cost) run.best = p;
    run.evaluations = eval;
    return run;
}

GaussianProcess::GaussianProcess(double amplitude, double length_scale, double jitter)
    : amp_(amplitude), len_(length_scale), jitter_(jitter) {}

void GaussianProcess::add(double x, double y, double noise_std) {
    xs_.push_back(x);
    ys_.push_back(y);
    noise_.push_back(noise_std);
    dirty_ = true;
}

void GaussianProcess::refit() const {
    const auto n = static_cast<Eigen::Index>(xs_.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double d = xs_[i] - xs_[j];
            k(i, j) = amp_ * amp_ * std::exp(-d * d / (2.0 * len_ * len_));
        }
        k(i, i) += noise_[i] * noise_[i] + jitter_;
    }
    llt_.compute(k);
    if (llt_.info() != Eigen::Success)
        throw numeric_error("GaussianProcess: kernel matrix is not positive definite");
    Eigen::VectorXd resid(n);
    for (Eigen::Index i = 0; i < n; ++i) resid(i) = ys_[i] - prior_mean_;
    alpha_ = llt_.solve(resid);
    dirty_ = false;
}

std::pair<double, double> GaussianProcess::predict(double x) const {
    if (xs_.empty()) return {prior_mean_, amp_};
    if (dirty_) refit();
    const auto n = static_cast<Eigen::Index>(xs_.size());
    Eigen::VectorXd kx(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double d = x - xs_[i];
        kx(i) = amp_ * amp_ * std::exp(-d * d / (2.0 * len_ * len_));
    }
    double mu = prior_mean_ + kx.dot(alpha_);
    Eigen::VectorXd v = llt_.solve(kx);
    double var = amp_ * amp_ - kx.dot(v);
    return {mu, std::sqrt(std::max(0.0, var))};
}

OptRun bayesian_optimize(const CostFn& fn, double init, const GpConfig& cfg) {
    validate(cfg);
    OptRun run;
    std::uint64_t eval = 0;

    auto eval_at = [&](double theta) {
        Eigen::VectorXd p(1);
        p(0) = theta;
        CostSample c = fn(p, eval++);
        run.trajectory.push_back({p, c.value, c.std_err});
        return c;
    };

    CostSample first = eval_at(init);
    if (!std::isfinite(first.value)) {
        run.best = run.trajectory.front();
        return run;
    }

    GaussianProcess gp(cfg.m_k, cfg.sigma_k, cfg.jitter);
    gp.set_prior_mean(first.value);
    gp.add(init, first.value, first.std_err);

    double prev_x = init;
    double prev_cost = first.value;
    for (int it = 1; it < cfg.max_iters; ++it) {
        double best_x = cfg.lo;
        double best_lcb = std::numeric_limits<double>::infinity();
        for (int i = 0; i < cfg.grid_points; ++i) {
            double x = cfg.lo + (cfg.hi - cfg.lo) * i / (cfg.grid_points - 1);
            auto [mu, sd] = gp.predict(x);
            double lcb = mu - cfg.z_lcb * sd;
            if (lcb < best_lcb) {
                best_lcb = lcb;
                best_x = x;
            }
        }
        CostSample c = eval_at(best_x);
        run.iterations = it;
        if (!std::isfinite(c.value)) break;
        gp.add(best_x, c.value, c.std_err);

        if (std::abs(best_x - prev_x) < cfg.tol_param &&
            std::abs(c.value - prev_cost) < cfg.tol_cost) {
            run.converged = true;
            break;
        }
        prev_x = best_x;
        prev_cost = c.value;
    }

    run.best = run.trajectory.front();
    for (const auto& p : run.trajectory)
        if (std::isfinite(p.cost) && p.cost < run.best.cost) run.best = p;
    run.evaluations = eval;
    return run;
}

}  // namespace pvqa
