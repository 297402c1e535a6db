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
 * Versioned human-readable sequence-model checkpoints (spec wiring,
 * vocabulary, training record, hexfloat parameters; bit-exact round trips).
 */
#pragma once

#include "qnlp/core/circuit_text.hpp" // hexfloat helpers
#include "qnlp/seqgen/seqgen.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace qnlp::seqgen {

inline std::string serialize_checkpoint(const SeqCheckpoint &ckpt) {
    ckpt.validate();
    std::ostringstream out;
    out << "QNLP-SEQCKPT v1\n";
    out << "arch " << (ckpt.spec.arch == SeqArch::Proposed ? "proposed" : "london") << '\n';
    out << "bits_per_token " << ckpt.spec.bits_per_token << '\n';
    out << "window " << ckpt.spec.window << '\n';
    out << "hidden_qubits " << ckpt.spec.hidden_qubits << '\n';
    out << "output_qubits " << ckpt.spec.output_qubits << '\n';
    out << "neurons " << ckpt.spec.neurons.size() << '\n';
    for (const auto &neuron : ckpt.spec.neurons) {
        out << "neuron target=" << neuron.target << " controls=[";
        for (std::size_t i = 0; i < neuron.controls.size(); ++i) {
            out << (i ? "," : "") << neuron.controls[i];
        }
        out << "]\n";
    }
    out << "vocab " << ckpt.vocab.size() << '\n';
    for (const auto &token : ckpt.vocab.tokens()) {
        out << "token " << token << '\n';
    }
    out << "trained seed=" << ckpt.seed << " epochs=" << ckpt.epochs
        << " lr=" << qnlp::detail::hexfloat(ckpt.learning_rate) << '\n';
    out << "params " << ckpt.params.size() << '\n';
    for (double p : ckpt.params) {
        out << qnlp::detail::hexfloat(p) << '\n';
    }
    return out.str();
}

inline SeqCheckpoint parse_checkpoint(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "QNLP-SEQCKPT v1") {
        throw IoError("missing or unsupported checkpoint header");
    }
    const auto next_field = [&](const std::string &key) {
        if (!std::getline(in, line)) {
            throw IoError("truncated checkpoint");
        }
        std::istringstream ls(line);
        std::string k, v;
        ls >> k >> v;
        if (k != key) {
            throw IoError("expected '" + key + "', got '" + k + "'");
        }
        return v;
    };

    SeqCheckpoint ckpt;
    const std::string arch = next_field("arch");
    if (arch == "proposed") {
        ckpt.spec.arch = SeqArch::Proposed;
    } else if (arch == "london") {
        ckpt.spec.arch = SeqArch::LondonBaseline;
    } else {
        throw IoError("unknown architecture '" + arch + "'");
    }
    ckpt.spec.bits_per_token = qnlp::detail::parse_u32(next_field("bits_per_token"));
    ckpt.spec.window = qnlp::detail::parse_u32(next_field("window"));
    ckpt.spec.hidden_qubits = qnlp::detail::parse_u32(next_field("hidden_qubits"));
    ckpt.spec.output_qubits = qnlp::detail::parse_u32(next_field("output_qubits"));
    const std::uint32_t neuron_count = qnlp::detail::parse_u32(next_field("neurons"));
    for (std::uint32_t i = 0; i < neuron_count; ++i) {
        if (!std::getline(in, line)) {
            throw IoError("truncated checkpoint (neurons)");
        }
        std::istringstream ls(line);
        std::string tag, target_field, controls_field;
        ls >> tag >> target_field >> controls_field;
        if (tag != "neuron") {
            throw IoError("malformed neuron line '" + line + "'");
        }
        NeuronSpec neuron;
        neuron.target =
            qnlp::detail::parse_u32(qnlp::detail::field_value(target_field, "target="));
        const auto body = qnlp::detail::strip_brackets(
            qnlp::detail::field_value(controls_field, "controls="));
        for (const auto &item : qnlp::detail::split_list(body)) {
            neuron.controls.push_back(qnlp::detail::parse_u32(item));
        }
        ckpt.spec.neurons.push_back(std::move(neuron));
    }

    const std::uint32_t vocab_size = qnlp::detail::parse_u32(next_field("vocab"));
    std::vector<std::string> tokens;
    for (std::uint32_t i = 0; i < vocab_size; ++i) {
        if (!std::getline(in, line)) {
            throw IoError("truncated checkpoint (vocabulary)");
        }
        std::istringstream ls(line);
        std::string tag, token;
        ls >> tag >> token;
        if (tag != "token" || token.empty()) {
            throw IoError("malformed token line '" + line + "'");
        }
        tokens.push_back(token);
    }
    ckpt.vocab = Vocabulary(std::move(tokens));

    if (!std::getline(in, line)) {
        throw IoError("truncated checkpoint (training record)");
    }
    {
        std::istringstream ls(line);
        std::string tag, seed_field, epochs_field, lr_field;
        ls >> tag >> seed_field >> epochs_field >> lr_field;
        if (tag != "trained") {
            throw IoError("malformed training record '" + line + "'");
        }
        ckpt.seed = std::stoull(std::string(qnlp::detail::field_value(seed_field, "seed=")));
        ckpt.epochs =
            std::stoull(std::string(qnlp::detail::field_value(epochs_field, "epochs=")));
        ckpt.learning_rate =
            qnlp::detail::parse_double(qnlp::detail::field_value(lr_field, "lr="));
    }

    const std::uint32_t param_count = qnlp::detail::parse_u32(next_field("params"));
    for (std::uint32_t i = 0; i < param_count; ++i) {
        if (!std::getline(in, line)) {
            throw IoError("truncated checkpoint (parameters)");
        }
        ckpt.params.push_back(qnlp::detail::parse_double(line));
    }
    ckpt.validate();
    return ckpt;
}

} // namespace qnlp::seqgen
