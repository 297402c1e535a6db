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
 * Adaptive-moment (Adam) optimizer and the generic training loop shared by
 * the embedding and sequence-model trainers.
 */
#pragma once

#include "qnlp/core/errors.hpp"
#include "qnlp/diffopt/gradients.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnlp {

struct AdamConfig {
    double learning_rate = 0.05;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct OptimizerState {
    std::size_t step_count = 0;
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    AdamConfig config;

    static OptimizerState init(std::size_t param_count, AdamConfig config = {}) {
        OptimizerState state;
        state.first_moment.assign(param_count, 0.0);
        state.second_moment.assign(param_count, 0.0);
        state.config = config;
        return state;
    }
};

/// One bias-corrected Adam update, in place. Deterministic.
inline void optimizer_step(OptimizerState &state, std::vector<double> &params,
                           std::span<const double> grad) {
    if (params.size() != grad.size() || params.size() != state.first_moment.size()) {
        throw ParameterError("optimizer_step: parameter/gradient/state length mismatch");
    }
    state.step_count += 1;
    const auto &c = state.config;
    const double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step_count));
    const double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step_count));
    for (std::size_t j = 0; j < params.size(); ++j) {
        auto &m = state.first_moment[j];
        auto &v = state.second_moment[j];
        m = c.beta1 * m + (1.0 - c.beta1) * grad[j];
        v = c.beta2 * v + (1.0 - c.beta2) * grad[j] * grad[j];
        params[j] -= c.learning_rate * (m / bc1) / (std::sqrt(v / bc2) + c.epsilon);
    }
}

/// (loss, optional gradient). Evaluations must be pure given (params, seed).
struct LossResult {
    double loss = 0.0;
    std::optional<std::vector<double>> gradient;
};

using LossFn = std::function<LossResult(std::span<const double>)>;

struct TrainConfig {
    std::size_t epochs = 100;
    AdamConfig adam;
    std::uint64_t seed = 0;
    double fd_step = 1e-5; // fallback when the loss provides no gradient
};

struct TrainResult {
    std::vector<double> best_params;
    double best_loss = 0.0;
    std::vector<double> loss_history;      // one entry per epoch
    std::vector<double> grad_norm_history; // aligned with loss_history
};

inline double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

/**
 * @brief Full-batch first-order training loop.
 *
 * Evaluates the loss once per epoch, records (loss, gradient norm), tracks
 * the best-loss parameters seen, and applies one Adam step. With zero epochs
 * the initial parameters are returned untouched. Fixed seeds and the fixed
 * evaluation order make histories bitwise reproducible.
 */
inline TrainResult train(const LossFn &loss, std::vector<double> init, TrainConfig config) {
    TrainResult result;
    result.best_params = init;
    result.best_loss = std::numeric_limits<double>::infinity();

    std::vector<double> params = std::move(init);
    OptimizerState opt = OptimizerState::init(params.size(), config.adam);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        LossResult r = loss(params);
        std::vector<double> grad;
        if (r.gradient.has_value()) {
            grad = std::move(*r.gradient);
        } else {
            grad = finite_diff_grad([&loss](std::span<const double> p) { return loss(p).loss; },
                                    params, config.fd_step);
        }
        result.loss_history.push_back(r.loss);
        result.grad_norm_history.push_back(l2_norm(grad));
        if (r.loss < result.best_loss) {
            result.best_loss = r.loss;
            result.best_params = params;
        }
        optimizer_step(opt, params, grad);
    }
    if (result.loss_history.empty()) {
        result.best_loss = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

/// One `epoch,loss,grad_norm` trace record (full precision, reproducible).
inline std::string format_trace_line(std::size_t epoch, double loss, double grad_norm) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g", epoch, loss, grad_norm);
    return buf;
}

} // namespace qnlp
