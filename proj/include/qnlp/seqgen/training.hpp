// Copyright 2026 The qnlpkit Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * NLL training for sequence models, on exact statevector probabilities.
 *
 * Per-pair gradients use the frozen-weight identity: with w_k = dL/dP_k
 * fixed at the evaluation point, dL/dtheta is the gradient of one diagonal
 * observable sum_k w_k Pi_k over the output register, computed by a single
 * adjoint sweep (or, behind a flag, by the parameter-shift rule).
 */
#pragma once

#include "qnlp/diffopt/gradients.hpp"
#include "qnlp/diffopt/optimizer.hpp"
#include "qnlp/seqgen/seqgen.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace qnlp::seqgen {

enum class GradMethod { Adjoint, ParameterShift };

struct SeqTrainConfig {
    std::size_t epochs = 300;
    double learning_rate = 0.05;
    std::uint64_t seed = 11;
    GradMethod grad_method = GradMethod::Adjoint;
    /// 0 = exact statevector probabilities; otherwise every probability and
    /// gradient expectation is estimated from this many sampled shots
    /// (forces the shift rule, as hardware would).
    std::size_t shots = 0;
};

namespace detail {

/// Loss and gradient of -ln p~(label) for one (context, label) pair.
/// `shot_rng` is only consulted when shots > 0.
inline LossResult pair_nll(const SeqModelSpec &spec, std::span<const double> params,
                           std::size_t vocab_size, const PredictionPair &pair,
                           GradMethod method, bool with_grad, std::size_t shots = 0,
                           Rng *shot_rng = nullptr) {
    const Circuit circuit = build_seq_circuit(spec, pair.context);
    const StateVector state = run_circuit(circuit, params);

    const std::uint32_t base = spec.output_base();
    const std::size_t bins = std::size_t{1} << spec.output_qubits;
    std::vector<double> out_probs(bins, 0.0);
    if (shots == 0) {
        for (std::size_t i = 0; i < state.size(); ++i) {
            out_probs[(i >> base) & (bins - 1)] += std::norm(state[i]);
        }
    } else {
        const auto draws = sample(state, shots, shot_rng->split(0).seed());
        for (const auto d : draws) {
            out_probs[(d >> base) & (bins - 1)] += 1.0 / static_cast<double>(shots);
        }
    }
    double mass = 0.0;
    for (std::size_t k = 0; k < vocab_size; ++k) {
        mass += out_probs[k];
    }
    if (mass < 1e-9) {
        throw DegenerateOutputError("output register mass on vocabulary outcomes is " +
                                    std::to_string(mass));
    }
    const double p_label = std::max(out_probs[pair.label], shots == 0 ? 1e-300 : 0.5 / shots);

    LossResult result;
    result.loss = -std::log(p_label) + std::log(mass);
    if (!with_grad) {
        return result;
    }

    // dL/dP_k = 1/mass for vocabulary outcomes, minus 1/p_label at the label.
    DiagonalObservable weights;
    weights.diag.assign(state.size(), 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::size_t k = (i >> base) & (bins - 1);
        if (k < vocab_size) {
            weights.diag[i] = 1.0 / mass - (k == pair.label ? 1.0 / p_label : 0.0);
        }
    }
    if (shots > 0) {
        Rng grad_rng = shot_rng->split(1);
        result.gradient = parameter_shift_grad_sampled(circuit, params, weights, shots,
                                                       grad_rng);
    } else {
        result.gradient = method == GradMethod::Adjoint
                              ? adjoint_grad(circuit, params, weights)
                              : parameter_shift_grad(circuit, params, weights);
    }
    return result;
}

} // namespace detail

/// Mean NLL and gradient over a pair list (fixed accumulation order).
/// With shots > 0, per-pair RNG streams split deterministically off `seed`.
inline LossResult batch_nll(const SeqModelSpec &spec, std::span<const double> params,
                            std::size_t vocab_size, const std::vector<PredictionPair> &pairs,
                            GradMethod method, bool with_grad = true, std::size_t shots = 0,
                            std::uint64_t seed = 0) {
    LossResult total;
    total.loss = 0.0;
    if (with_grad) {
        total.gradient = std::vector<double>(params.size(), 0.0);
    }
    const Rng root(seed);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        Rng pair_rng = root.split(p);
        const LossResult r = detail::pair_nll(spec, params, vocab_size, pairs[p], method,
                                              with_grad, shots, &pair_rng);
        total.loss += r.loss;
        if (with_grad) {
            for (std::size_t j = 0; j < params.size(); ++j) {
                (*total.gradient)[j] += (*r.gradient)[j];
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(pairs.size());
    total.loss *= scale;
    if (with_grad) {
        for (auto &g : *total.gradient) {
            g *= scale;
        }
    }
    return total;
}

struct SeqTrainOutput {
    SeqCheckpoint checkpoint;
    TrainResult trace;
};

/**
 * @brief Full-batch Adam over the train split's (context, next-token) pairs.
 *
 * Returns the best-training-loss checkpoint and the per-epoch trace. The
 * training seed/epochs/learning rate are recorded in the checkpoint.
 */
inline SeqTrainOutput train_seq(SeqCheckpoint ckpt, const Corpus &corpus,
                                const SeqTrainConfig &config) {
    ckpt.validate();
    const auto pairs = prediction_pairs(ckpt.spec, corpus, false);

    std::size_t epoch = 0;
    const LossFn loss = [&](std::span<const double> params) -> LossResult {
        const std::uint64_t shot_seed = Rng(config.seed).split(0x5E9 + epoch++).seed();
        return batch_nll(ckpt.spec, params, ckpt.vocab.size(), pairs, config.grad_method,
                         true, config.shots, shot_seed);
    };

    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.adam.learning_rate = config.learning_rate;
    tc.seed = config.seed;
    TrainResult trace = train(loss, ckpt.params, tc);

    ckpt.params = trace.best_params;
    ckpt.seed = config.seed;
    ckpt.epochs = config.epochs;
    ckpt.learning_rate = config.learning_rate;
    return SeqTrainOutput{std::move(ckpt), std::move(trace)};
}

} // namespace qnlp::seqgen
