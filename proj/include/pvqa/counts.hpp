#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pvqa {

/// Acquisition model: a fixed coincidence budget per measurement setting,
/// multinomial shot noise, and a uniform accidental floor set by the
/// coincidence-to-accidental ratio. car = infinity disables accidentals.
struct NoiseConfig {
    std::int64_t total_counts_per_setting = 2000;
    double car = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    bool subtract_accidentals = false;
};

struct CountsRecord {
    std::string setting_id;
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> cc;
    std::int64_t cc_total = 0;
    std::uint64_t stream = 0;  // derived RNG stream, for the run log
};

/// Draws counts for one setting. With K outcomes of exact probability p and
/// accidental floor a = sum(p)/(K*car), each outcome is sampled with weight
/// (p + a) normalized over the setting; N = total_counts_per_setting trials.
/// Deterministic in (p, cfg, setting_id, eval_index).
CountsRecord sample_counts(const Eigen::VectorXd& probs, const NoiseConfig& cfg,
                           const std::string& setting_id, std::uint64_t eval_index = 0);

/// Normalized estimate cc / cc_total.
Eigen::VectorXd estimate_probabilities(const CountsRecord& rec);

/// Same, but invert the accidental floor implied by cfg.car before
/// renormalizing (clamped at zero).
Eigen::VectorXd estimate_probabilities(const CountsRecord& rec, const NoiseConfig& cfg);

}  // namespace pvqa
