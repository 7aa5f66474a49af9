#include "pvqa/counts.hpp"

#include <cmath>
#include <stdexcept>

#include "pvqa/errors.hpp"
#include "pvqa/rng.hpp"

namespace pvqa {

namespace {

void validate(const NoiseConfig& cfg) {
    if (cfg.total_counts_per_setting < 1)
        throw std::invalid_argument("NoiseConfig: total_counts_per_setting must be >= 1");
    if (!(cfg.car > 0.0)) throw std::invalid_argument("NoiseConfig: car must be positive");
}

}  // namespace

CountsRecord sample_counts(const Eigen::VectorXd& probs, const NoiseConfig& cfg,
                           const std::string& setting_id, std::uint64_t eval_index) {
    validate(cfg);
    const Eigen::Index k = probs.size();
    if (k == 0) throw std::invalid_argument("sample_counts: empty probability vector");
    double total = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (!(probs(i) >= -1e-12)) throw std::invalid_argument("sample_counts: negative probability");
        total += std::max(0.0, probs(i));
    }
    if (total <= 0.0) throw std::invalid_argument("sample_counts: all probabilities vanish");

    double floor = std::isinf(cfg.car) ? 0.0 : total / (static_cast<double>(k) * cfg.car);
    Eigen::VectorXd cum(k);
    double norm = total + static_cast<double>(k) * floor;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        acc += (std::max(0.0, probs(i)) + floor) / norm;
        cum(i) = acc;
    }
    cum(k - 1) = 1.0;

    CountsRecord rec;
    rec.setting_id = setting_id;
    rec.stream = derive_stream(cfg.seed, setting_id, eval_index);
    rec.cc = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(k);
    Rng rng(rec.stream);
    for (std::int64_t n = 0; n < cfg.total_counts_per_setting; ++n) {
        double u = rng.uniform();
        Eigen::Index c = 0;
        while (c < k - 1 && u >= cum(c)) ++c;
        ++rec.cc(c);
    }
    rec.cc_total = cfg.total_counts_per_setting;
    return rec;
}

Eigen::VectorXd estimate_probabilities(const CountsRecord& rec) {
    if (rec.cc_total <= 0) throw numeric_error("estimate_probabilities: empty count record");
    return rec.cc.cast<double>() / static_cast<double>(rec.cc_total);
}

Eigen::VectorXd estimate_probabilities(const CountsRecord& rec, const NoiseConfig& cfg) {
    Eigen::VectorXd p = estimate_probabilities(rec);
    if (!cfg.subtract_accidentals || std::isinf(cfg.car)) return p;
    const double k = static_cast<double>(p.size());
    double floor = 1.0 / (k * cfg.car);  // accidental fraction for a unit-sum tensor
    p = ((1.0 + k * floor) * p.array() - floor).cwiseMax(0.0);
    double s = p.sum();
    if (s > 0.0) p /= s;
    return p;
}

}  // namespace pvqa
