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
 * Quantum word embeddings: words as statevectors prepared by a layered
 * RY-RZ + CNOT-ring ansatz, compared through swap-test fidelity.
 *
 * Two schemes share one retrieval contract:
 *  - circuit-efficient: each word k owns a parameter vector theta_k and its
 *    state is U(theta_k)|0> on m qubits (deterministic preparation);
 *  - memory-efficient: one shared U(theta) on n >= m qubits applied to the
 *    basis state |k>, with the n-m ancilla qubits post-selected on |0>
 *    (probabilistic preparation; the success probability is reported).
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/core/errors.hpp"
#include "qnlp/core/state_vector.hpp"
#include "qnlp/diffopt/observable.hpp"
#include "qnlp/text/vocabulary.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace qnlp::embed {

/// Layered hardware-efficient ansatz: per layer, RY then RZ on every qubit
/// followed by a CNOT ring. Parameter count = 2 * qubits * layers.
struct AnsatzSpec {
    std::uint32_t qubits = 3;
    std::uint32_t layers = 2;

    std::size_t param_count() const {
        return 2ull * qubits * layers;
    }
};

/// The ansatz as a parameterized circuit with slots `<prefix>0..<prefix>P-1`.
inline Circuit ansatz_circuit(const AnsatzSpec &spec, const std::string &prefix = "t") {
    if (spec.qubits < 1 || spec.layers < 1) {
        throw ParameterError("ansatz needs at least one qubit and one layer");
    }
    Circuit circuit;
    circuit.width = spec.qubits;
    std::size_t next = 0;
    for (std::uint32_t layer = 0; layer < spec.layers; ++layer) {
        for (std::uint32_t q = 0; q < spec.qubits; ++q) {
            circuit.ry(q, prefix + std::to_string(next++));
            circuit.rz(q, prefix + std::to_string(next++));
        }
        if (spec.qubits >= 2) {
            for (std::uint32_t q = 0; q < spec.qubits; ++q) {
                circuit.cnot(q, (q + 1) % spec.qubits);
            }
        }
    }
    return circuit;
}

enum class EmbedScheme { CircuitEfficient, MemoryEfficient };

inline const char *scheme_name(EmbedScheme scheme) {
    return scheme == EmbedScheme::CircuitEfficient ? "circuit" : "memory";
}

struct EmbeddingModel {
    Vocabulary vocab;
    AnsatzSpec ansatz;        // width = state_qubits or total_qubits per scheme
    EmbedScheme scheme = EmbedScheme::CircuitEfficient;
    std::uint32_t state_qubits = 3; // m: qubits of a word state
    std::uint32_t total_qubits = 3; // n >= m: ansatz width (memory-efficient)
    std::vector<ParameterVector> word_params; // N vectors (circuit-efficient)
    ParameterVector shared_params;            // one vector (memory-efficient)

    std::size_t vocab_size() const { return vocab.size(); }
};

/// Fresh model with parameters uniform in (-0.1, 0.1), seeded.
inline EmbeddingModel init_embedding_model(Vocabulary vocab, EmbedScheme scheme,
                                           std::uint32_t state_qubits, std::uint32_t layers,
                                           std::uint64_t seed) {
    EmbeddingModel model;
    model.vocab = std::move(vocab);
    model.scheme = scheme;
    model.state_qubits = state_qubits;
    model.total_qubits = scheme == EmbedScheme::MemoryEfficient
                             ? std::max(state_qubits, model.vocab.index_bits())
                             : state_qubits;
    model.ansatz = AnsatzSpec{scheme == EmbedScheme::MemoryEfficient ? model.total_qubits
                                                                     : state_qubits,
                              layers};
    Rng rng(seed);
    if (scheme == EmbedScheme::CircuitEfficient) {
        model.word_params.resize(model.vocab.size());
        for (auto &params : model.word_params) {
            params.resize(model.ansatz.param_count());
            for (auto &p : params) {
                p = rng.uniform(-0.1, 0.1);
            }
        }
    } else {
        model.shared_params.resize(model.ansatz.param_count());
        for (auto &p : model.shared_params) {
            p = rng.uniform(-0.1, 0.1);
        }
    }
    return model;
}

/// Circuit preparing U(theta_k)|0> with the word's angles bound in.
inline Circuit word_state_circuit(const EmbeddingModel &model, std::size_t word_index) {
    if (model.scheme != EmbedScheme::CircuitEfficient) {
        throw ParameterError("word_state_circuit requires the circuit-efficient scheme");
    }
    if (word_index >= model.word_params.size()) {
        throw IndexError("word index " + std::to_string(word_index) + " out of range");
    }
    const Circuit ansatz = ansatz_circuit(model.ansatz);
    const auto &theta = model.word_params[word_index];
    Circuit bound;
    bound.width = ansatz.width;
    for (const auto &op : ansatz.ops) {
        GateOp copy = op;
        if (copy.param_slot.has_value()) {
            copy.fixed_angle = copy.param_scale * theta.at(*copy.param_slot);
            copy.param_slot.reset();
            copy.param_scale = 1.0;
        }
        bound.push(std::move(copy));
    }
    return bound;
}

/**
 * @brief Memory-efficient retrieval: prepare |k> on n qubits, apply the
 * shared unitary, post-select the n-m ancilla qubits on |0>.
 *
 * Returns the renormalized m-qubit state and the post-selection success
 * probability; a success probability below 1e-9 raises
 * PreparationFailureError.
 */
inline std::pair<StateVector, double> memory_efficient_state(const EmbeddingModel &model,
                                                             std::size_t word_index) {
    if (model.scheme != EmbedScheme::MemoryEfficient) {
        throw ParameterError("memory_efficient_state requires the memory-efficient scheme");
    }
    if (word_index >= model.vocab.size()) {
        throw IndexError("word index " + std::to_string(word_index) + " out of range");
    }
    const std::uint32_t n = model.total_qubits;
    const std::uint32_t m = model.state_qubits;

    Circuit prep;
    prep.width = n;
    for (std::uint32_t b = 0; b < n; ++b) {
        if ((word_index >> b) & 1) {
            prep.x(b);
        }
    }
    prep.append(ansatz_circuit(model.ansatz));
    StateVector state = run_circuit(prep, model.shared_params);

    double success = 1.0;
    for (std::uint32_t q = m; q < n; ++q) {
        try {
            auto [next, mass] = post_select(state, q, 0);
            state = std::move(next);
            success *= mass;
        } catch (const ImpossibleOutcomeError &) {
            success = 0.0;
        }
        if (success < 1e-9) {
            throw PreparationFailureError(
                "ancilla post-selection mass " + std::to_string(success) + " for word " +
                std::to_string(word_index));
        }
    }

    // All mass now sits on indices < 2^m; narrow to the word register.
    StateVector word(m);
    for (std::size_t i = 0; i < word.size(); ++i) {
        word[i] = state[i];
    }
    word.check_norm();
    return {std::move(word), success};
}

/// The word state under either scheme (the shared retrieval contract).
inline StateVector word_state(const EmbeddingModel &model, std::size_t word_index) {
    if (model.scheme == EmbedScheme::CircuitEfficient) {
        return run_circuit(word_state_circuit(model, word_index));
    }
    return memory_efficient_state(model, word_index).first;
}

/// |<a|b>|^2.
inline double fidelity_exact(const StateVector &a, const StateVector &b) {
    const Amplitude overlap = inner_product(a, b);
    return std::norm(overlap);
}

/**
 * @brief Swap-test circuit over 1 + 2m qubits: H on the ancilla (qubit 0),
 * an ancilla-controlled SWAP per qubit pair, H again.
 *
 * P(ancilla = 0) = (1 + |<a|b>|^2) / 2. The controlled SWAPs are compiled as
 * CNOT / Toffoli triples, staying inside the supported gate set. Both input
 * circuits must be fully bound (no symbolic parameters).
 */
inline Circuit swap_test_circuit(const Circuit &a, const Circuit &b) {
    if (a.width != b.width) {
        throw WidthMismatchError("swap test requires equal state widths");
    }
    if (a.num_params() != 0 || b.num_params() != 0) {
        throw ParameterError("swap test inputs must be fully bound circuits");
    }
    const std::uint32_t m = a.width;
    Circuit circuit;
    circuit.width = 1 + 2 * m;
    circuit.append(a, 1);
    circuit.append(b, 1 + m);
    circuit.h(0);
    for (std::uint32_t j = 0; j < m; ++j) {
        const std::uint32_t x = 1 + j;
        const std::uint32_t y = 1 + m + j;
        // Fredkin(0; x, y) = CNOT(y,x) . Toffoli(0,x -> y) . CNOT(y,x)
        circuit.cnot(y, x);
        circuit.mcx({ControlSpec{0, Polarity::Closed}, ControlSpec{x, Polarity::Closed}}, y);
        circuit.cnot(y, x);
    }
    circuit.h(0);
    return circuit;
}

/// P(ancilla qubit 0 measures 0) from the exact final state.
inline double swap_test_prob0(const StateVector &joint) {
    double mass = 0.0;
    for (std::size_t i = 0; i < joint.size(); i += 2) {
        mass += std::norm(joint[i]);
    }
    return mass;
}

/// Shot-based fidelity estimate F_hat = 2 * p0_hat - 1 from the swap test.
inline double swap_test_fidelity_estimate(const Circuit &a, const Circuit &b,
                                          std::size_t shots, std::uint64_t seed) {
    const Circuit test = swap_test_circuit(a, b);
    const StateVector joint = run_circuit(test);
    const auto draws = sample(joint, shots, seed);
    std::size_t zeros = 0;
    for (auto d : draws) {
        zeros += (d & 1) ? 0 : 1;
    }
    const double p0 = static_cast<double>(zeros) / static_cast<double>(shots);
    return 2.0 * p0 - 1.0;
}

/// Parameterized prediction head V(phi) over n qubits.
struct PredictionHead {
    AnsatzSpec spec;
    ParameterVector params;
};

inline PredictionHead init_prediction_head(std::uint32_t qubits, std::uint32_t layers,
                                           std::uint64_t seed) {
    PredictionHead head;
    head.spec = AnsatzSpec{qubits, layers};
    head.params.resize(head.spec.param_count());
    Rng rng(seed);
    for (auto &p : head.params) {
        p = rng.uniform(-0.1, 0.1);
    }
    return head;
}

/// |w> padded with |0> ancillas up to the head width.
inline StateVector pad_state(const StateVector &input, std::uint32_t width) {
    if (width < input.width()) {
        throw WidthMismatchError("cannot pad a state down");
    }
    if (width == input.width()) {
        return input;
    }
    StateVector padded(width);
    padded[0] = Amplitude{0.0, 0.0};
    for (std::size_t i = 0; i < input.size(); ++i) {
        padded[i] = input[i];
    }
    return padded;
}

/**
 * @brief Born probability p_phi(k|w) = |<k| V(phi) (|w> x |0>)|^2.
 *
 * The probabilities over all 2^n basis outcomes sum to one; prediction
 * training renormalizes over the first N (vocabulary) outcomes.
 */
inline double skipgram_head_prob(const EmbeddingModel &model, const PredictionHead &head,
                                 const StateVector &input_state, std::size_t k) {
    if (input_state.width() != model.state_qubits) {
        throw WidthMismatchError("input state width does not match the model's word states");
    }
    if (head.spec.qubits < input_state.width()) {
        throw WidthMismatchError("prediction head narrower than the word state");
    }
    if (k >= (std::size_t{1} << head.spec.qubits)) {
        throw IndexError("outcome index " + std::to_string(k) + " out of range");
    }
    StateVector state = pad_state(input_state, head.spec.qubits);
    apply_circuit_inplace(ansatz_circuit(head.spec), head.params, state);
    return std::norm(state[k]);
}

/// Distribution over the vocabulary: Born outcomes < N, renormalized.
inline std::vector<double> head_vocabulary_distribution(const EmbeddingModel &model,
                                                        const PredictionHead &head,
                                                        const StateVector &input_state) {
    StateVector state = pad_state(input_state, head.spec.qubits);
    apply_circuit_inplace(ansatz_circuit(head.spec), head.params, state);
    std::vector<double> probs(model.vocab.size());
    double mass = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        probs[k] = std::norm(state[k]);
        mass += probs[k];
    }
    if (mass < 1e-9) {
        throw DegenerateOutputError("vocabulary outcomes carry no probability mass");
    }
    for (auto &p : probs) {
        p /= mass;
    }
    return probs;
}

} // namespace qnlp::embed
