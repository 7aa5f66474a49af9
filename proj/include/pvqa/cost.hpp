#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pvqa/counts.hpp"
#include "pvqa/observables.hpp"
#include "pvqa/state.hpp"

namespace pvqa {

/// An observable compiled for acquisition: one measurement setting per
/// commuting group, with the per-outcome weight sum_k w_k pi_k[cell] folded
/// into a single vector. The identity string rides along with weight w0 and
/// pi = 1, which the per-setting normalization reproduces exactly.
struct CompiledObservable {
    struct Group {
        MeasurementSetting setting;
        Eigen::VectorXd weights;  // flat over setting.pairs
    };
    std::vector<Group> groups;
};

/// Default compilation: partition into commuting groups and take each
/// group's eigenbasis setting.
CompiledObservable compile_observable(const WeightedObservable& obs,
                                      const std::string& id_prefix = "cg");

/// Compilation of a diagonal observable against an explicit projector list
/// whose entries are labeled by computational outcomes (n1, n2); used when
/// the hardware list realizes a relabeling of the basis. labels[j] gives the
/// 1-based ququart outcome pair of pairs[j].
CompiledObservable compile_diagonal_with_pairs(const WeightedObservable& obs,
                                               MeasurementSetting setting,
                                               const std::vector<std::array<int, 2>>& labels);

struct CostEvaluation {
    double value = 0.0;
    double std_err = 0.0;
    int n_settings_used = 0;
    std::vector<CountsRecord> records;              // sampled path
    std::vector<Eigen::VectorXd> tensors;           // per-group probabilities used
};

/// Noiseless evaluation from exact probability tensors.
CostEvaluation evaluate_exact(const CompiledObservable& obs, const TwoQuquartState& state);

/// Shot-noise evaluation: per group, one multinomial count record with the
/// configured budget, normalized per setting; the 1-sigma error comes from
/// the multinomial covariance of the weighted sum.
CostEvaluation evaluate_sampled(const CompiledObservable& obs, const TwoQuquartState& state,
                                const NoiseConfig& cfg, std::uint64_t eval_index = 0);

/// Either path depending on whether a noise model is given.
CostEvaluation evaluate(const CompiledObservable& obs, const TwoQuquartState& state,
                        const std::optional<NoiseConfig>& noise, std::uint64_t eval_index = 0);

}  // namespace pvqa
