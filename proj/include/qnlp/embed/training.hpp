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
 * Embedding training: SGNS over swap-test fidelity, and the Skip-gram /
 * CBOW prediction heads with vocabulary-renormalized Born outputs.
 *
 * Fidelity gradients go through the compute-uncompute circuit
 * U(theta_a)^dag U(theta_b) |0> with a projector observable on |0...0>, so
 * they are exact under both the adjoint sweep and the shift rule.
 */
#pragma once

#include "qnlp/diffopt/gradients.hpp"
#include "qnlp/diffopt/optimizer.hpp"
#include "qnlp/embed/embedding.hpp"
#include "qnlp/text/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qnlp::embed {

inline constexpr double kFidelityEpsilon = 1e-9;

struct SgnsConfig {
    std::uint32_t window = 2;    // context radius in tokens
    std::uint32_t negatives = 2; // negative samples per positive pair
    std::size_t epochs = 150;
    double learning_rate = 0.05;
    std::uint64_t seed = 7;
};

struct SgnsPair {
    TokenId target;
    TokenId context;
    std::vector<TokenId> negatives;
};

/**
 * @brief One record per (target, in-window context) pair over the train
 * split; negatives are drawn uniformly from the vocabulary excluding the
 * pair's own two words. Fixed seeds give identical lists.
 */
inline std::vector<SgnsPair> generate_training_pairs(const Corpus &corpus,
                                                     const SgnsConfig &config) {
    if (corpus.train_indices.empty()) {
        throw EncodingError("empty corpus");
    }
    if (config.window < 1 || config.negatives < 1) {
        throw ParameterError("SGNS needs window >= 1 and negatives >= 1");
    }
    Rng rng = Rng(config.seed).split(0x5347u); // pair-generation stream
    std::vector<SgnsPair> pairs;
    for (const auto *sentence : corpus.split(false)) {
        const auto &s = *sentence;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::size_t lo = i >= config.window ? i - config.window : 0;
            const std::size_t hi = std::min(s.size() - 1, i + config.window);
            for (std::size_t j = lo; j <= hi; ++j) {
                if (j == i) {
                    continue;
                }
                SgnsPair pair{s[i], s[j], {}};
                while (pair.negatives.size() < config.negatives) {
                    const auto cand = static_cast<TokenId>(rng.next_below(corpus.vocab.size()));
                    if (cand != pair.target && cand != pair.context) {
                        pair.negatives.push_back(cand);
                    }
                }
                pairs.push_back(std::move(pair));
            }
        }
    }
    return pairs;
}

/// Compute-uncompute fidelity circuit with canonical slot order [b..., a...].
inline Circuit fidelity_circuit(const AnsatzSpec &spec) {
    Circuit combined;
    combined.width = spec.qubits;
    for (std::size_t i = 0; i < spec.param_count(); ++i) {
        combined.slot("b" + std::to_string(i));
    }
    for (std::size_t i = 0; i < spec.param_count(); ++i) {
        combined.slot("a" + std::to_string(i));
    }
    combined.append(ansatz_circuit(spec, "b"));
    combined.append(inverse_circuit(ansatz_circuit(spec, "a")));
    return combined;
}

struct FidelityWithGrad {
    double fidelity = 0.0;
    std::vector<double> grad_a; // d F / d theta_a
    std::vector<double> grad_b; // d F / d theta_b
};

/// F(a, b) = |<0|U(a)^dag U(b)|0>|^2 and its parameter gradients.
inline FidelityWithGrad fidelity_with_grad(const AnsatzSpec &spec,
                                           std::span<const double> theta_a,
                                           std::span<const double> theta_b, bool with_grad) {
    const std::size_t p = spec.param_count();
    if (theta_a.size() != p || theta_b.size() != p) {
        throw ParameterError("fidelity_with_grad: parameter length mismatch");
    }
    const Circuit circuit = fidelity_circuit(spec);
    std::vector<double> params;
    params.reserve(2 * p);
    params.insert(params.end(), theta_b.begin(), theta_b.end());
    params.insert(params.end(), theta_a.begin(), theta_a.end());

    const DiagonalObservable proj = basis_projector(spec.qubits, 0);
    FidelityWithGrad out;
    out.fidelity = circuit_expectation(circuit, params, proj);
    if (with_grad) {
        const auto grad = adjoint_grad(circuit, params, proj);
        out.grad_b.assign(grad.begin(), grad.begin() + static_cast<std::ptrdiff_t>(p));
        out.grad_a.assign(grad.begin() + static_cast<std::ptrdiff_t>(p), grad.end());
    }
    return out;
}

struct SgnsLossValue {
    double loss = 0.0;
    /// d loss / d theta_w for every word touched by the record.
    std::map<TokenId, std::vector<double>> grad_contributions;
};

/**
 * @brief loss = -ln(F(target, context) + eps)
 *              - sum_neg ln(1 - F(target, neg) + eps),  eps = 1e-9.
 */
inline SgnsLossValue sgns_loss(const EmbeddingModel &model, TokenId target, TokenId context,
                               const std::vector<TokenId> &negatives, bool with_grad = true) {
    if (model.scheme != EmbedScheme::CircuitEfficient) {
        throw ParameterError("SGNS training requires the circuit-efficient scheme");
    }
    const std::size_t n = model.vocab.size();
    if (target >= n || context >= n) {
        throw IndexError("SGNS pair index out of range");
    }
    for (auto neg : negatives) {
        if (neg >= n) {
            throw IndexError("SGNS negative index out of range");
        }
        if (neg == target) {
            throw ParameterError("negative sample equals the target word");
        }
    }

    SgnsLossValue out;
    const std::size_t p = model.ansatz.param_count();
    const auto accumulate = [&](TokenId word, const std::vector<double> &grad, double scale) {
        auto &slot = out.grad_contributions[word];
        if (slot.empty()) {
            slot.assign(p, 0.0);
        }
        for (std::size_t j = 0; j < p; ++j) {
            slot[j] += scale * grad[j];
        }
    };

    const auto term = [&](TokenId other, bool positive) {
        const auto fw = fidelity_with_grad(model.ansatz, model.word_params[target],
                                           model.word_params[other], with_grad);
        double dloss_df = 0.0;
        if (positive) {
            out.loss += -std::log(fw.fidelity + kFidelityEpsilon);
            dloss_df = -1.0 / (fw.fidelity + kFidelityEpsilon);
        } else {
            out.loss += -std::log(1.0 - fw.fidelity + kFidelityEpsilon);
            dloss_df = 1.0 / (1.0 - fw.fidelity + kFidelityEpsilon);
        }
        if (with_grad) {
            accumulate(target, fw.grad_a, dloss_df);
            accumulate(other, fw.grad_b, dloss_df);
        }
    };

    term(context, true);
    for (auto neg : negatives) {
        term(neg, false);
    }
    return out;
}

struct SgnsTrainOutput {
    EmbeddingModel model;
    TrainResult trace;
    std::vector<SgnsPair> pairs; // the fixed training pairs used
};

/**
 * @brief Full-batch SGNS: mean loss/gradient over the (fixed, seeded) pair
 * list, one Adam step per epoch across all per-word parameter vectors.
 */
inline SgnsTrainOutput train_sgns(const Corpus &corpus, EmbeddingModel model,
                                  const SgnsConfig &config) {
    if (model.scheme != EmbedScheme::CircuitEfficient) {
        throw ParameterError("SGNS training requires the circuit-efficient scheme");
    }
    const auto pairs = generate_training_pairs(corpus, config);
    const std::size_t p = model.ansatz.param_count();
    const std::size_t n = model.vocab.size();

    std::vector<double> flat(n * p);
    for (std::size_t w = 0; w < n; ++w) {
        std::copy(model.word_params[w].begin(), model.word_params[w].end(),
                  flat.begin() + static_cast<std::ptrdiff_t>(w * p));
    }

    EmbeddingModel scratch = model;
    const LossFn loss = [&](std::span<const double> params) -> LossResult {
        for (std::size_t w = 0; w < n; ++w) {
            std::copy(params.begin() + static_cast<std::ptrdiff_t>(w * p),
                      params.begin() + static_cast<std::ptrdiff_t>((w + 1) * p),
                      scratch.word_params[w].begin());
        }
        double total = 0.0;
        std::vector<double> grad(params.size(), 0.0);
        for (const auto &pair : pairs) {
            const auto value = sgns_loss(scratch, pair.target, pair.context, pair.negatives);
            total += value.loss;
            for (const auto &[word, contribution] : value.grad_contributions) {
                for (std::size_t j = 0; j < p; ++j) {
                    grad[word * p + j] += contribution[j];
                }
            }
        }
        const double scale = 1.0 / static_cast<double>(pairs.size());
        for (auto &g : grad) {
            g *= scale;
        }
        return LossResult{total * scale, std::move(grad)};
    };

    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.adam.learning_rate = config.learning_rate;
    tc.seed = config.seed;
    TrainResult trace = train(loss, flat, tc);

    for (std::size_t w = 0; w < n; ++w) {
        std::copy(trace.best_params.begin() + static_cast<std::ptrdiff_t>(w * p),
                  trace.best_params.begin() + static_cast<std::ptrdiff_t>((w + 1) * p),
                  model.word_params[w].begin());
    }
    return SgnsTrainOutput{std::move(model), std::move(trace), pairs};
}

/// Mean fidelity separation between the positive pairs and their negatives.
struct SeparationReport {
    double mean_positive = 0.0;
    double mean_negative = 0.0;
    double separation() const { return mean_positive - mean_negative; }
};

inline SeparationReport fidelity_separation(const EmbeddingModel &model,
                                            const std::vector<SgnsPair> &pairs) {
    SeparationReport report;
    std::size_t pos = 0;
    std::size_t neg = 0;
    std::vector<StateVector> states;
    states.reserve(model.vocab.size());
    for (std::size_t w = 0; w < model.vocab.size(); ++w) {
        states.push_back(word_state(model, w));
    }
    for (const auto &pair : pairs) {
        report.mean_positive += fidelity_exact(states[pair.target], states[pair.context]);
        ++pos;
        for (auto n : pair.negatives) {
            report.mean_negative += fidelity_exact(states[pair.target], states[n]);
            ++neg;
        }
    }
    report.mean_positive /= static_cast<double>(pos);
    report.mean_negative /= static_cast<double>(neg);
    return report;
}

// --- Skip-gram / CBOW with the prediction head ----------------------------

struct Word2vecConfig {
    std::uint32_t window = 2;
    std::size_t epochs = 100;
    double learning_rate = 0.05;
    std::uint64_t seed = 7;
    std::uint32_t head_layers = 2;
};

/// Word ansatz (lower m qubits) followed by the head; slots [w..., h...].
inline Circuit prediction_circuit(const AnsatzSpec &word_spec, const AnsatzSpec &head_spec) {
    if (head_spec.qubits < word_spec.qubits) {
        throw WidthMismatchError("prediction head narrower than the word ansatz");
    }
    Circuit circuit;
    circuit.width = head_spec.qubits;
    for (std::size_t i = 0; i < word_spec.param_count(); ++i) {
        circuit.slot("w" + std::to_string(i));
    }
    for (std::size_t i = 0; i < head_spec.param_count(); ++i) {
        circuit.slot("h" + std::to_string(i));
    }
    circuit.append(ansatz_circuit(word_spec, "w"));
    circuit.append(ansatz_circuit(head_spec, "h"));
    return circuit;
}

struct HeadLossValue {
    double loss = 0.0;
    std::vector<double> grad_word; // d loss / d theta_input
    std::vector<double> grad_head; // d loss / d phi
};

/**
 * @brief -ln p~(label | input) where p~ renormalizes the Born distribution
 * over the first N basis outcomes, with exact gradients.
 *
 * The gradient uses the frozen-weight identity: with w_k = dL/dP_k held at
 * the evaluation point, dL/dtheta is the gradient of the single diagonal
 * observable sum_k w_k |k><k|, obtained in one adjoint sweep.
 */
inline HeadLossValue head_nll_loss(const EmbeddingModel &model,
                                   std::span<const double> input_params,
                                   const PredictionHead &head, std::size_t label,
                                   bool with_grad = true) {
    const std::size_t n_vocab = model.vocab.size();
    if (label >= n_vocab) {
        throw IndexError("label out of vocabulary range");
    }
    const Circuit circuit = prediction_circuit(model.ansatz, head.spec);
    const std::size_t pw = model.ansatz.param_count();
    const std::size_t ph = head.spec.param_count();
    if (input_params.size() != pw || head.params.size() != ph) {
        throw ParameterError("head_nll_loss: parameter length mismatch");
    }
    std::vector<double> params;
    params.reserve(pw + ph);
    params.insert(params.end(), input_params.begin(), input_params.end());
    params.insert(params.end(), head.params.begin(), head.params.end());

    StateVector state = run_circuit(circuit, params);
    const std::size_t dim = state.size();
    double mass = 0.0;
    for (std::size_t k = 0; k < n_vocab; ++k) {
        mass += std::norm(state[k]);
    }
    if (mass < 1e-9) {
        throw DegenerateOutputError("vocabulary outcomes carry no probability mass");
    }
    const double p_label = std::norm(state[label]);
    HeadLossValue out;
    out.loss = -std::log(std::max(p_label, 1e-300)) + std::log(mass);

    if (with_grad) {
        DiagonalObservable weights;
        weights.diag.assign(dim, 0.0);
        for (std::size_t k = 0; k < n_vocab; ++k) {
            weights.diag[k] = 1.0 / mass;
        }
        weights.diag[label] -= 1.0 / std::max(p_label, 1e-300);
        const auto grad = adjoint_grad(circuit, params, weights);
        out.grad_word.assign(grad.begin(), grad.begin() + static_cast<std::ptrdiff_t>(pw));
        out.grad_head.assign(grad.begin() + static_cast<std::ptrdiff_t>(pw), grad.end());
    }
    return out;
}

struct Word2vecTrainOutput {
    EmbeddingModel model;
    PredictionHead head;
    TrainResult trace;
};

namespace detail {

struct PredictionExample {
    std::vector<TokenId> inputs; // words pooled into the input state
    TokenId label;
};

inline std::vector<PredictionExample> window_examples(const Corpus &corpus,
                                                      std::uint32_t window, bool cbow) {
    std::vector<PredictionExample> examples;
    for (const auto *sentence : corpus.split(false)) {
        const auto &s = *sentence;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::size_t lo = i >= window ? i - window : 0;
            const std::size_t hi = std::min(s.size() - 1, i + window);
            if (cbow) {
                PredictionExample ex;
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j != i) {
                        ex.inputs.push_back(s[j]);
                    }
                }
                ex.label = s[i];
                if (!ex.inputs.empty()) {
                    examples.push_back(std::move(ex));
                }
            } else {
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j != i) {
                        examples.push_back(PredictionExample{{s[i]}, s[j]});
                    }
                }
            }
        }
    }
    if (examples.empty()) {
        throw EncodingError("corpus produced no training examples");
    }
    return examples;
}

/// Shared Skip-gram/CBOW loop; CBOW pools context by averaging parameters.
inline Word2vecTrainOutput train_prediction(const Corpus &corpus, EmbeddingModel model,
                                            PredictionHead head, const Word2vecConfig &config,
                                            bool cbow) {
    if (model.scheme != EmbedScheme::CircuitEfficient) {
        throw ParameterError("prediction training requires the circuit-efficient scheme");
    }
    const auto examples = window_examples(corpus, config.window, cbow);
    const std::size_t n = model.vocab.size();
    const std::size_t pw = model.ansatz.param_count();
    const std::size_t ph = head.spec.param_count();

    std::vector<double> flat(n * pw + ph);
    for (std::size_t w = 0; w < n; ++w) {
        std::copy(model.word_params[w].begin(), model.word_params[w].end(),
                  flat.begin() + static_cast<std::ptrdiff_t>(w * pw));
    }
    std::copy(head.params.begin(), head.params.end(),
              flat.begin() + static_cast<std::ptrdiff_t>(n * pw));

    EmbeddingModel scratch = model;
    PredictionHead scratch_head = head;
    const LossFn loss = [&](std::span<const double> params) -> LossResult {
        for (std::size_t w = 0; w < n; ++w) {
            std::copy(params.begin() + static_cast<std::ptrdiff_t>(w * pw),
                      params.begin() + static_cast<std::ptrdiff_t>((w + 1) * pw),
                      scratch.word_params[w].begin());
        }
        std::copy(params.begin() + static_cast<std::ptrdiff_t>(n * pw), params.end(),
                  scratch_head.params.begin());

        double total = 0.0;
        std::vector<double> grad(params.size(), 0.0);
        std::vector<double> pooled(pw);
        for (const auto &ex : examples) {
            std::fill(pooled.begin(), pooled.end(), 0.0);
            for (auto w : ex.inputs) {
                for (std::size_t j = 0; j < pw; ++j) {
                    pooled[j] += scratch.word_params[w][j];
                }
            }
            const double inv = 1.0 / static_cast<double>(ex.inputs.size());
            for (auto &v : pooled) {
                v *= inv;
            }
            const auto value = head_nll_loss(scratch, pooled, scratch_head, ex.label);
            total += value.loss;
            for (auto w : ex.inputs) {
                for (std::size_t j = 0; j < pw; ++j) {
                    grad[w * pw + j] += value.grad_word[j] * inv;
                }
            }
            for (std::size_t j = 0; j < ph; ++j) {
                grad[n * pw + j] += value.grad_head[j];
            }
        }
        const double scale = 1.0 / static_cast<double>(examples.size());
        for (auto &g : grad) {
            g *= scale;
        }
        return LossResult{total * scale, std::move(grad)};
    };

    TrainConfig tc;
    tc.epochs = config.epochs;
    tc.adam.learning_rate = config.learning_rate;
    tc.seed = config.seed;
    TrainResult trace = train(loss, flat, tc);

    for (std::size_t w = 0; w < n; ++w) {
        std::copy(trace.best_params.begin() + static_cast<std::ptrdiff_t>(w * pw),
                  trace.best_params.begin() + static_cast<std::ptrdiff_t>((w + 1) * pw),
                  model.word_params[w].begin());
    }
    std::copy(trace.best_params.begin() + static_cast<std::ptrdiff_t>(n * pw),
              trace.best_params.end(), head.params.begin());
    return Word2vecTrainOutput{std::move(model), std::move(head), std::move(trace)};
}

} // namespace detail

/// Skip-gram: the target word predicts each context word.
inline Word2vecTrainOutput train_skipgram(const Corpus &corpus, EmbeddingModel model,
                                          PredictionHead head, const Word2vecConfig &config) {
    return detail::train_prediction(corpus, std::move(model), std::move(head), config, false);
}

/// CBOW: parameter-averaged context words predict the target.
inline Word2vecTrainOutput train_cbow(const Corpus &corpus, EmbeddingModel model,
                                      PredictionHead head, const Word2vecConfig &config) {
    return detail::train_prediction(corpus, std::move(model), std::move(head), config, true);
}

/// Two well-separated topic clusters; every sentence stays inside one
/// cluster, so in-window pairs are intra-cluster and negatives mostly cross.
inline Corpus builtin_toy_corpus() {
    const std::vector<std::string> lines = {
        "moon star night sky",  "star moon sky night",  "night sky moon star",
        "bread milk eat food",  "milk bread food eat",  "eat food bread milk",
    };
    return make_corpus(lines, 0);
}

} // namespace qnlp::embed
