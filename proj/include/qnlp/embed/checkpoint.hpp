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
 * Versioned human-readable embedding checkpoints: one `token <name> <angles>`
 * line per word, hexfloat angles for bit-exact round trips.
 */
#pragma once

#include "qnlp/core/circuit_text.hpp" // hexfloat helpers
#include "qnlp/embed/embedding.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace qnlp::embed {

inline std::string serialize_embedding(const EmbeddingModel &model) {
    std::ostringstream out;
    out << "QNLP-EMBED v1\n";
    out << "scheme " << scheme_name(model.scheme) << '\n';
    out << "state_qubits " << model.state_qubits << '\n';
    out << "total_qubits " << model.total_qubits << '\n';
    out << "layers " << model.ansatz.layers << '\n';
    out << "vocab " << model.vocab.size() << '\n';
    if (model.scheme == EmbedScheme::CircuitEfficient) {
        for (std::size_t w = 0; w < model.vocab.size(); ++w) {
            out << "token " << model.vocab.token(static_cast<TokenId>(w));
            for (double v : model.word_params[w]) {
                out << ' ' << qnlp::detail::hexfloat(v);
            }
            out << '\n';
        }
    } else {
        for (std::size_t w = 0; w < model.vocab.size(); ++w) {
            out << "token " << model.vocab.token(static_cast<TokenId>(w)) << '\n';
        }
        out << "shared";
        for (double v : model.shared_params) {
            out << ' ' << qnlp::detail::hexfloat(v);
        }
        out << '\n';
    }
    return out.str();
}

inline EmbeddingModel parse_embedding(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "QNLP-EMBED v1") {
        throw IoError("missing or unsupported embedding checkpoint header");
    }
    auto next_field = [&](const std::string &key) {
        if (!std::getline(in, line)) {
            throw IoError("truncated embedding checkpoint");
        }
        std::istringstream ls(line);
        std::string k, v;
        ls >> k >> v;
        if (k != key) {
            throw IoError("expected '" + key + "', got '" + k + "'");
        }
        return v;
    };

    EmbeddingModel model;
    const std::string scheme = next_field("scheme");
    if (scheme == "circuit") {
        model.scheme = EmbedScheme::CircuitEfficient;
    } else if (scheme == "memory") {
        model.scheme = EmbedScheme::MemoryEfficient;
    } else {
        throw IoError("unknown embedding scheme '" + scheme + "'");
    }
    model.state_qubits = qnlp::detail::parse_u32(next_field("state_qubits"));
    model.total_qubits = qnlp::detail::parse_u32(next_field("total_qubits"));
    const std::uint32_t layers = qnlp::detail::parse_u32(next_field("layers"));
    const std::uint32_t vocab_size = qnlp::detail::parse_u32(next_field("vocab"));
    model.ansatz = AnsatzSpec{model.scheme == EmbedScheme::MemoryEfficient ? model.total_qubits
                                                                           : model.state_qubits,
                              layers};

    std::vector<std::string> tokens;
    for (std::uint32_t w = 0; w < vocab_size; ++w) {
        if (!std::getline(in, line)) {
            throw IoError("truncated embedding checkpoint");
        }
        std::istringstream ls(line);
        std::string tag, token;
        ls >> tag >> token;
        if (tag != "token" || token.empty()) {
            throw IoError("malformed token line '" + line + "'");
        }
        tokens.push_back(token);
        if (model.scheme == EmbedScheme::CircuitEfficient) {
            ParameterVector params;
            std::string value;
            while (ls >> value) {
                params.push_back(qnlp::detail::parse_double(value));
            }
            if (params.size() != model.ansatz.param_count()) {
                throw IoError("token '" + token + "' carries " +
                              std::to_string(params.size()) + " parameters, expected " +
                              std::to_string(model.ansatz.param_count()));
            }
            model.word_params.push_back(std::move(params));
        }
    }
    model.vocab = Vocabulary(std::move(tokens));

    if (model.scheme == EmbedScheme::MemoryEfficient) {
        if (!std::getline(in, line)) {
            throw IoError("truncated embedding checkpoint");
        }
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "shared") {
            throw IoError("expected shared parameter line");
        }
        std::string value;
        while (ls >> value) {
            model.shared_params.push_back(qnlp::detail::parse_double(value));
        }
        if (model.shared_params.size() != model.ansatz.param_count()) {
            throw IoError("shared parameter count mismatch");
        }
    }
    return model;
}

} // namespace qnlp::embed
