#include "pvqa/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "pvqa/errors.hpp"

namespace pvqa {

CompiledObservable compile_observable(const WeightedObservable& obs,
                                      const std::string& id_prefix) {
    CompiledObservable out;
    auto groups = group_commuting(obs);
    int gi = 0;
    for (const auto& g : groups) {
        CompiledObservable::Group cg;
        cg.setting = group_setting(g, id_prefix + std::to_string(gi++));
        cg.weights = Eigen::VectorXd::Zero(16);
        for (std::size_t k = 0; k < g.members.size(); ++k) {
            double w = obs.terms[g.members[k]].coeff;
            for (int m1 = 0; m1 < 4; ++m1)
                for (int m2 = 0; m2 < 4; ++m2) cg.weights(m1 * 4 + m2) += w * g.pi[k](m1, m2);
        }
        out.groups.push_back(std::move(cg));
    }
    return out;
}

CompiledObservable compile_diagonal_with_pairs(const WeightedObservable& obs,
                                               MeasurementSetting setting,
                                               const std::vector<std::array<int, 2>>& labels) {
    if (labels.size() != setting.pairs.size())
        throw std::invalid_argument("compile_diagonal_with_pairs: label list shape mismatch");
    CompiledObservable out;
    CompiledObservable::Group cg;
    cg.weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t j = 0; j < labels.size(); ++j) {
        auto [n1, n2] = labels[j];
        auto bi = ququart_bits(n1);
        auto bs = ququart_bits(n2);
        std::array<int, 4> bits = {bi[0], bi[1], bs[0], bs[1]};
        double w = 0.0;
        for (const auto& t : obs.terms) w += t.coeff * diagonal_eigenvalue(t.ops, bits);
        cg.weights(static_cast<Eigen::Index>(j)) = w;
    }
    cg.setting = std::move(setting);
    out.groups.push_back(std::move(cg));
    return out;
}

CostEvaluation evaluate_exact(const CompiledObservable& obs, const TwoQuquartState& state) {
    CostEvaluation ev;
    for (const auto& g : obs.groups) {
        Eigen::VectorXd p = probability_vector(state, g.setting);
        ev.value += g.weights.dot(p);
        ev.tensors.push_back(std::move(p));
    }
    ev.std_err = 0.0;
    ev.n_settings_used = static_cast<int>(obs.groups.size());
    return ev;
}

CostEvaluation evaluate_sampled(const CompiledObservable& obs, const TwoQuquartState& state,
                                const NoiseConfig& cfg, std::uint64_t eval_index) {
    CostEvaluation ev;
    double var = 0.0;
    for (const auto& g : obs.groups) {
        Eigen::VectorXd p = probability_vector(state, g.setting);
        CountsRecord rec = sample_counts(p, cfg, g.setting.id, eval_index);
        Eigen::VectorXd phat = estimate_probabilities(rec, cfg);
        double contrib = g.weights.dot(phat);
        ev.value += contrib;
        // Multinomial covariance of the weighted sum, plug-in estimate:
        // Var = (sum W^2 p - (sum W p)^2) / N.
        double second = (g.weights.array().square() * phat.array()).sum();
        var += std::max(0.0, second - contrib * contrib) /
               static_cast<double>(cfg.total_counts_per_setting);
        ev.tensors.push_back(std::move(phat));
        ev.records.push_back(std::move(rec));
    }
    ev.std_err = std::sqrt(var);
    ev.n_settings_used = static_cast<int>(obs.groups.size());
    return ev;
}

CostEvaluation evaluate(const CompiledObservable& obs, const TwoQuquartState& state,
                        const std::optional<NoiseConfig>& noise, std::uint64_t eval_index) {
    return noise ? evaluate_sampled(obs, state, *noise, eval_index) : evaluate_exact(obs, state);
}

}  // namespace pvqa
