#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace pvqa {

/// Black-box cost evaluation result handed to the optimizers.
struct CostSample {
    double value = 0.0;
    double std_err = 0.0;
};

/// Cost callback; eval_index is a monotonically increasing counter the
/// optimizers assign so that sampled evaluations draw independent and
/// reproducible noise streams.
using CostFn = std::function<CostSample(const Eigen::VectorXd& params, std::uint64_t eval_index)>;

struct GdConfig {
    double epsilon_fd = 0.05;  // forward-difference step, rad
    double eta = 0.3;          // learning rate
    int max_iters = 100;
    double tol_param = 0.01;  // rad
    double tol_cost = 0.005;
};

struct GpConfig {
    double m_k = 0.6;            // kernel amplitude
    double sigma_k = 0.65;       // kernel length scale
    double z_lcb = 1.959964;     // 2.5% lower confidence bound
    double jitter = 1e-8;        // kernel diagonal regularizer
    int max_iters = 25;
    double tol_param = 0.01;
    double tol_cost = 0.005;
    int grid_points = 512;       // acquisition grid resolution
    double lo = -0.785398163397448279;  // search domain
    double hi = 1.570796326794896558;
};

struct OptRun {
    struct Point {
        Eigen::VectorXd params;
        double cost = 0.0;
        double std_err = 0.0;
    };
    std::vector<Point> trajectory;
    Point best;
    bool converged = false;
    int iterations = 0;
    std::uint64_t evaluations = 0;
};

/// Forward-difference gradient descent, minimizing: the update steps against
/// the finite-difference gradient (x -> x - eta * grad). One trajectory point
/// per iteration; aborts with converged = false on a non-finite cost.
OptRun gradient_descent(const CostFn& fn, const Eigen::VectorXd& init, const GdConfig& cfg);

/// One-dimensional Bayesian search with a squared-exponential Gaussian
/// process. The prior mean is the first sample's value; the next point
/// minimizes mu - z*sigma over a dense grid. Per-sample noise variance is
/// std_err^2 plus the jitter.
OptRun bayesian_optimize(const CostFn& fn, double init, const GpConfig& cfg);

/// Gaussian-process posterior over scalar inputs; exposed for tests.
class GaussianProcess {
public:
    GaussianProcess(double amplitude, double length_scale, double jitter);

    void add(double x, double y, double noise_std = 0.0);
    void set_prior_mean(double m) { prior_mean_ = m; }
    double prior_mean() const { return prior_mean_; }
    std::size_t size() const { return xs_.size(); }

    /// Posterior mean and standard deviation at x (prior if empty).
    std::pair<double, double> predict(double x) const;

private:
    void refit() const;

    double amp_, len_, jitter_;
    double prior_mean_ = 0.0;
    std::vector<double> xs_, ys_, noise_;
    mutable Eigen::LLT<Eigen::MatrixXd> llt_;
    mutable Eigen::VectorXd alpha_;
    mutable bool dirty_ = true;
};

}  // namespace pvqa
