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
 * Autoregressive quantum sequence models.
 *
 * Register layout (qubit 0 = least significant): an input register of
 * bits_per_token * window qubits basis-encoding the context tokens, an
 * optional hidden register, and an output register whose measured value is
 * the predicted token. Quantum neurons are a bias RY on the target followed
 * by one single-control RY per control qubit (parameter count =
 * |controls| + 1); control fan-in is wired as a sequence of single-control
 * gates, never as a true multi-controlled gate.
 *
 * The proposed architecture carries its hidden qubit between neuron layers
 * unchanged (identity mixing) and contains no reset operation. The
 * london-baseline is the single-readout classifier shape.
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/core/errors.hpp"
#include "qnlp/core/state_vector.hpp"
#include "qnlp/diffopt/observable.hpp"
#include "qnlp/text/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qnlp::seqgen {

struct NeuronSpec {
    std::vector<std::uint32_t> controls;
    std::uint32_t target = 0;

    std::size_t param_count() const { return controls.size() + 1; }
};

enum class SeqArch { Proposed, LondonBaseline };

inline const char *arch_name(SeqArch arch) {
    return arch == SeqArch::Proposed ? "proposed" : "london-baseline";
}

struct SeqModelSpec {
    SeqArch arch = SeqArch::Proposed;
    std::uint32_t bits_per_token = 4;
    std::uint32_t window = 1; // context length in tokens
    std::uint32_t hidden_qubits = 1;
    std::uint32_t output_qubits = 4;
    std::vector<NeuronSpec> neurons;

    std::uint32_t input_qubits() const { return bits_per_token * window; }
    std::uint32_t hidden_base() const { return input_qubits(); }
    std::uint32_t output_base() const { return input_qubits() + hidden_qubits; }
    std::uint32_t total_qubits() const {
        return input_qubits() + hidden_qubits + output_qubits;
    }

    void validate() const {
        if (bits_per_token < 1 || window < 1 || output_qubits < 1) {
            throw ParameterError("sequence model spec has an empty register");
        }
        if (total_qubits() > kMaxQubits) {
            throw CapacityError("sequence model needs " + std::to_string(total_qubits()) +
                                " qubits, above the simulator cap");
        }
        for (const auto &neuron : neurons) {
            if (neuron.target >= total_qubits()) {
                throw IndexError("neuron target out of range");
            }
            for (auto c : neuron.controls) {
                if (c >= total_qubits()) {
                    throw IndexError("neuron control out of range");
                }
                if (c == neuron.target) {
                    throw IndexError("neuron control overlaps its target");
                }
            }
        }
    }
};

/// Total trainable angles: sum over neurons of |controls| + 1.
inline std::size_t count_parameters(const SeqModelSpec &spec) {
    std::size_t count = 0;
    for (const auto &neuron : spec.neurons) {
        count += neuron.param_count();
    }
    return count;
}

/**
 * @brief The 9-qubit proposed architecture (4 input / 1 hidden / 4 output).
 *
 * Hidden neurons (controls = input register, target = hidden) in groups of
 * [7, 7, 6], each group followed by one output layer of four neurons
 * (controls = input register + hidden, one per output qubit). 20 hidden
 * neurons and 12 output neurons give 20*5 + 12*6 = 172 parameters.
 */
inline SeqModelSpec proposed_default_spec() {
    SeqModelSpec spec;
    spec.arch = SeqArch::Proposed;
    spec.bits_per_token = 4;
    spec.window = 1;
    spec.hidden_qubits = 1;
    spec.output_qubits = 4;

    const std::vector<std::uint32_t> inputs{0, 1, 2, 3};
    std::vector<std::uint32_t> inputs_hidden = inputs;
    inputs_hidden.push_back(spec.hidden_base());

    const std::uint32_t group_sizes[] = {7, 7, 6};
    for (std::uint32_t group = 0; group < 3; ++group) {
        for (std::uint32_t rep = 0; rep < group_sizes[group]; ++rep) {
            spec.neurons.push_back(NeuronSpec{inputs, spec.hidden_base()});
        }
        for (std::uint32_t o = 0; o < spec.output_qubits; ++o) {
            spec.neurons.push_back(NeuronSpec{inputs_hidden, spec.output_base() + o});
        }
    }
    spec.validate();
    return spec;
}

/**
 * @brief The 9-qubit london-baseline classifier: two 4-bit input tokens and
 * one readout qubit driven by 33 input-controlled neurons (33*9 = 297
 * parameters). Only the readout qubit is measured in classification mode.
 */
inline SeqModelSpec london_default_spec() {
    SeqModelSpec spec;
    spec.arch = SeqArch::LondonBaseline;
    spec.bits_per_token = 4;
    spec.window = 2;
    spec.hidden_qubits = 0;
    spec.output_qubits = 1;

    std::vector<std::uint32_t> inputs;
    for (std::uint32_t q = 0; q < spec.input_qubits(); ++q) {
        inputs.push_back(q);
    }
    for (std::uint32_t rep = 0; rep < 33; ++rep) {
        spec.neurons.push_back(NeuronSpec{inputs, spec.output_base()});
    }
    spec.validate();
    return spec;
}

/**
 * @brief London-style language model: the classifier shape widened to a full
 * output register so it can emit a next-token distribution (no hidden qubit,
 * one neuron layer from the 2-token input register to each output qubit).
 */
inline SeqModelSpec london_lm_spec(std::uint32_t bits_per_token = 4,
                                   std::uint32_t output_qubits = 4) {
    SeqModelSpec spec;
    spec.arch = SeqArch::LondonBaseline;
    spec.bits_per_token = bits_per_token;
    spec.window = 2;
    spec.hidden_qubits = 0;
    spec.output_qubits = output_qubits;

    std::vector<std::uint32_t> inputs;
    for (std::uint32_t q = 0; q < spec.input_qubits(); ++q) {
        inputs.push_back(q);
    }
    for (std::uint32_t o = 0; o < output_qubits; ++o) {
        spec.neurons.push_back(NeuronSpec{inputs, spec.output_base() + o});
    }
    spec.validate();
    return spec;
}

/**
 * @brief E(x): X gates writing each context token's binary code onto its
 * bits_per_token-wide slice of the input register.
 */
inline Circuit encode_tokens(const SeqModelSpec &spec, std::span<const TokenId> context) {
    if (context.size() != spec.window) {
        throw ParameterError("context length " + std::to_string(context.size()) +
                             " does not match the model window " + std::to_string(spec.window));
    }
    Circuit block;
    block.width = spec.total_qubits();
    for (std::uint32_t slot = 0; slot < spec.window; ++slot) {
        const TokenId token = context[slot];
        if (token >= (std::uint64_t{1} << spec.bits_per_token)) {
            throw IndexError("token id " + std::to_string(token) +
                             " does not fit in " + std::to_string(spec.bits_per_token) +
                             " bits");
        }
        for (std::uint32_t b = 0; b < spec.bits_per_token; ++b) {
            if ((token >> b) & 1) {
                block.x(slot * spec.bits_per_token + b);
            }
        }
    }
    return block;
}

/// Reads the tokens back out of an input-register basis value.
inline std::vector<TokenId> decode_input_register(const SeqModelSpec &spec,
                                                  std::uint64_t basis_index) {
    std::vector<TokenId> tokens(spec.window);
    const std::uint64_t mask = (std::uint64_t{1} << spec.bits_per_token) - 1;
    for (std::uint32_t slot = 0; slot < spec.window; ++slot) {
        tokens[slot] =
            static_cast<TokenId>((basis_index >> (slot * spec.bits_per_token)) & mask);
    }
    return tokens;
}

/**
 * @brief N(theta): bias RY(theta_0) on the target, then one single-control
 * RY(theta_j) per control qubit, sharing the naming prefix for its slots.
 */
inline void append_neuron(Circuit &circuit, const NeuronSpec &neuron,
                          const std::string &prefix) {
    for (auto c : neuron.controls) {
        if (c == neuron.target) {
            throw IndexError("neuron control overlaps its target");
        }
    }
    circuit.ry(neuron.target, prefix + "b");
    std::size_t j = 0;
    for (auto c : neuron.controls) {
        circuit.controlled_rotation(RotationAxis::RY, {ControlSpec{c, Polarity::Closed}},
                                    neuron.target, prefix + "c" + std::to_string(j++));
    }
}

/// Stand-alone neuron block (width = highest wire + 1), for inspection.
inline Circuit build_neuron(const std::vector<std::uint32_t> &controls, std::uint32_t target) {
    NeuronSpec neuron{controls, target};
    Circuit block;
    block.width = target + 1;
    for (auto c : controls) {
        block.width = std::max(block.width, c + 1);
    }
    append_neuron(block, neuron, "n0_");
    return block;
}

/**
 * @brief Full circuit for one prediction step: E(context) followed by every
 * neuron in spec order. Parameter slots are named n<i>_b / n<i>_c<j>, so the
 * parameter vector is ordered neuron by neuron.
 */
inline Circuit build_seq_circuit(const SeqModelSpec &spec, std::span<const TokenId> context) {
    spec.validate();
    Circuit circuit = encode_tokens(spec, context);
    std::size_t index = 0;
    for (const auto &neuron : spec.neurons) {
        append_neuron(circuit, neuron, "n" + std::to_string(index++) + "_");
    }
    return circuit;
}

/// Full trained model: spec, parameters, vocabulary, training record.
struct SeqCheckpoint {
    SeqModelSpec spec;
    ParameterVector params;
    Vocabulary vocab;
    std::uint64_t seed = 0;       // training seed (recorded)
    std::size_t epochs = 0;       // training epochs (recorded)
    double learning_rate = 0.0;   // training learning rate (recorded)
    std::uint32_t version = 1;

    void validate() const {
        spec.validate();
        if (params.size() != count_parameters(spec)) {
            throw ParameterError("checkpoint parameter count " +
                                 std::to_string(params.size()) + " does not match spec (" +
                                 std::to_string(count_parameters(spec)) + ")");
        }
        if (spec.output_qubits < vocab.index_bits()) {
            throw ParameterError("output register narrower than ceil(log2 vocab))");
        }
    }
};

/// Fresh checkpoint with angles uniform in (-0.1, 0.1), seeded.
inline SeqCheckpoint init_checkpoint(SeqModelSpec spec, Vocabulary vocab, std::uint64_t seed) {
    SeqCheckpoint ckpt;
    ckpt.spec = std::move(spec);
    ckpt.vocab = std::move(vocab);
    ckpt.seed = seed;
    ckpt.params.resize(count_parameters(ckpt.spec));
    Rng rng(seed);
    for (auto &p : ckpt.params) {
        p = rng.uniform(-0.1, 0.1);
    }
    ckpt.validate();
    return ckpt;
}

/// Left-pads (with token 0) or truncates `context` to the model window.
inline std::vector<TokenId> fit_context(const SeqModelSpec &spec,
                                        std::span<const TokenId> context) {
    std::vector<TokenId> window(spec.window, 0);
    const std::size_t take = std::min<std::size_t>(context.size(), spec.window);
    for (std::size_t i = 0; i < take; ++i) {
        window[spec.window - 1 - i] = context[context.size() - 1 - i];
    }
    return window;
}

/// Marginal Born probabilities of the output register (2^output_qubits bins).
inline std::vector<double> output_register_distribution(const SeqCheckpoint &ckpt,
                                                        std::span<const TokenId> context) {
    const Circuit circuit = build_seq_circuit(ckpt.spec, context);
    const StateVector state = run_circuit(circuit, ckpt.params);
    const std::uint32_t base = ckpt.spec.output_base();
    const std::size_t bins = std::size_t{1} << ckpt.spec.output_qubits;
    std::vector<double> probs(bins, 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        probs[(i >> base) & (bins - 1)] += std::norm(state[i]);
    }
    return probs;
}

/**
 * @brief Next-token distribution: exact output-register probabilities
 * renormalized over token indices < N. Context is taken as-is when it
 * matches the window, otherwise left-padded with token 0.
 */
inline std::vector<double> next_token_distribution(const SeqCheckpoint &ckpt,
                                                   std::span<const TokenId> context) {
    ckpt.validate();
    const auto window = fit_context(ckpt.spec, context);
    const auto raw = output_register_distribution(ckpt, window);
    std::vector<double> probs(ckpt.vocab.size());
    double mass = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        probs[k] = raw[k];
        mass += raw[k];
    }
    if (mass < 1e-9) {
        throw DegenerateOutputError("output register mass on vocabulary outcomes is " +
                                    std::to_string(mass));
    }
    for (auto &p : probs) {
        p /= mass;
    }
    return probs;
}

/**
 * @brief Classification-mode readout for the london-baseline shape: the
 * probability of measuring |1> on the single designated readout qubit
 * (the first output qubit), i.e. the probability the sequence is in class 1.
 */
inline double classify_class1_probability(const SeqModelSpec &spec,
                                          std::span<const double> params,
                                          std::span<const TokenId> context) {
    if (spec.arch != SeqArch::LondonBaseline) {
        throw ParameterError("classification readout is defined for the london baseline");
    }
    const Circuit circuit = build_seq_circuit(spec, fit_context(spec, context));
    const StateVector state = run_circuit(circuit, params);
    const std::size_t bit = std::size_t{1} << spec.output_base();
    double mass = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & bit) {
            mass += std::norm(state[i]);
        }
    }
    return mass;
}

/// (context window, next token) pairs for one split; short contexts padded.
struct PredictionPair {
    std::vector<TokenId> context;
    TokenId label;
};

inline std::vector<PredictionPair> prediction_pairs(const SeqModelSpec &spec,
                                                    const Corpus &corpus, bool test_split) {
    std::vector<PredictionPair> pairs;
    for (const auto *sentence : corpus.split(test_split)) {
        const auto &s = *sentence;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::size_t lo = i >= spec.window ? i - spec.window : 0;
            const std::span<const TokenId> prefix(s.data() + lo, i - lo);
            pairs.push_back(PredictionPair{fit_context(spec, prefix), s[i]});
        }
    }
    if (pairs.empty()) {
        throw EncodingError("corpus split produced no prediction pairs");
    }
    return pairs;
}

/// Mean -ln p~(next | context) over a split.
inline double nll_loss(const SeqCheckpoint &ckpt, const Corpus &corpus, bool test_split) {
    const auto pairs = prediction_pairs(ckpt.spec, corpus, test_split);
    double total = 0.0;
    for (const auto &pair : pairs) {
        const auto probs = next_token_distribution(ckpt, pair.context);
        total += -std::log(std::max(probs[pair.label], 1e-300));
    }
    return total / static_cast<double>(pairs.size());
}

/// exp(mean NLL); uniform prediction over N tokens gives N.
inline double perplexity(const SeqCheckpoint &ckpt, const Corpus &corpus, bool test_split) {
    return std::exp(nll_loss(ckpt, corpus, test_split));
}

/// Perplexity of the naive uniform-prediction baseline (= vocabulary size).
inline double uniform_perplexity(const Corpus &corpus, bool test_split) {
    const double n = static_cast<double>(corpus.vocab.size());
    std::size_t pair_count = 0;
    for (const auto *sentence : corpus.split(test_split)) {
        pair_count += sentence->size();
    }
    if (pair_count == 0) {
        throw EncodingError("corpus split produced no prediction pairs");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pair_count; ++i) {
        total += -std::log(1.0 / n);
    }
    return std::exp(total / static_cast<double>(pair_count));
}

/**
 * @brief Autoregressive single-shot generation.
 *
 * Each step samples the full register once, reads the output register, and
 * rejects-and-redraws outcomes at or beyond the vocabulary; the accepted
 * token slides into the context window. More than 1000 consecutive
 * rejections raise DegenerateOutputError.
 */
inline std::vector<TokenId> generate(const SeqCheckpoint &ckpt,
                                     std::span<const TokenId> prompt, std::size_t length,
                                     std::uint64_t seed) {
    ckpt.validate();
    Rng rng(seed);
    std::vector<TokenId> window = fit_context(ckpt.spec, prompt);
    std::vector<TokenId> generated;
    generated.reserve(length);
    const std::uint32_t base = ckpt.spec.output_base();
    const std::uint64_t out_mask = (std::uint64_t{1} << ckpt.spec.output_qubits) - 1;

    for (std::size_t step = 0; step < length; ++step) {
        const Circuit circuit = build_seq_circuit(ckpt.spec, window);
        const StateVector state = run_circuit(circuit, ckpt.params);
        const auto probs = probabilities(state);
        std::vector<double> cdf(probs.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            cdf[i] = acc;
        }
        TokenId token = 0;
        std::size_t rejections = 0;
        for (;;) {
            const double u = rng.next_double() * acc;
            std::size_t lo = 0;
            std::size_t hi = cdf.size() - 1;
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                if (cdf[mid] <= u) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            const std::uint64_t outcome = (lo >> base) & out_mask;
            if (outcome < ckpt.vocab.size()) {
                token = static_cast<TokenId>(outcome);
                break;
            }
            if (++rejections > 1000) {
                throw DegenerateOutputError("generation rejected 1000 consecutive shots");
            }
        }
        generated.push_back(token);
        window.erase(window.begin());
        window.push_back(token);
    }
    return generated;
}

/**
 * @brief The shipped 7-sentence corpus over an 11-word vocabulary,
 * split 5 train / 2 test. Token 0 is the sentence terminator "." and doubles
 * as the context padding token.
 */
inline Corpus builtin_corpus() {
    const std::vector<std::string> lines = {
        "the cat sat on the mat .",   // train
        "the dog sat on the rug .",   // train
        "the cat ran on the grass .", // train
        "the dog ran on the path .",  // train
        "the dog sat on the mat .",   // train
        "the cat sat on the rug .",   // test
        "the dog ran on the grass .", // test
    };
    return make_corpus(lines, 2, ".");
}

} // namespace qnlp::seqgen
