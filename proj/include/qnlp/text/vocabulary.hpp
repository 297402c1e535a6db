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
 * Token vocabularies and tokenized corpora shared by the embedding and
 * sequence-generation modules.
 */
#pragma once

#include "qnlp/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace qnlp {

using TokenId = std::uint32_t;

inline std::uint32_t ceil_log2_u64(std::uint64_t n) {
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << bits) < n) {
        ++bits;
        if (bits > 63) {
            throw CapacityError("ceil_log2 overflow");
        }
    }
    return bits;
}

class Vocabulary {
  public:
    Vocabulary() = default;

    explicit Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
        if (tokens_.size() < 2) {
            throw EncodingError("vocabulary needs at least 2 tokens");
        }
        for (std::size_t i = 0; i < tokens_.size(); ++i) {
            if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
                throw EncodingError("duplicate token '" + tokens_[i] + "'");
            }
        }
    }

    std::size_t size() const { return tokens_.size(); }

    /// ceil(log2(N)): qubits needed to index every token.
    std::uint32_t index_bits() const { return ceil_log2_u64(tokens_.size()); }

    const std::string &token(TokenId id) const {
        if (id >= tokens_.size()) {
            throw IndexError("token id " + std::to_string(id) + " out of range");
        }
        return tokens_[id];
    }

    TokenId id(const std::string &token) const {
        const auto it = index_.find(token);
        if (it == index_.end()) {
            throw EncodingError("token '" + token + "' not in vocabulary");
        }
        return it->second;
    }

    bool contains(const std::string &token) const { return index_.count(token) != 0; }

    const std::vector<std::string> &tokens() const { return tokens_; }

  private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, TokenId> index_;
};

/// Sentences of token ids plus a disjoint, exhaustive train/test split.
struct Corpus {
    std::vector<std::vector<TokenId>> sentences;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    Vocabulary vocab;

    std::vector<const std::vector<TokenId> *> split(bool test) const {
        std::vector<const std::vector<TokenId> *> out;
        for (auto i : test ? test_indices : train_indices) {
            out.push_back(&sentences.at(i));
        }
        return out;
    }
};

/// Lowercases and splits on whitespace.
inline std::vector<std::string> tokenize_line(const std::string &line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        std::transform(tok.begin(), tok.end(), tok.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        tokens.push_back(tok);
    }
    return tokens;
}

/**
 * @brief Builds a corpus from raw sentence lines.
 *
 * The vocabulary is derived from the train split in order of first
 * appearance; token 0 (the padding token for short contexts) is whatever
 * token opens the first training sentence unless `reserved_first` supplies
 * one explicitly. Test sentences must not introduce new tokens.
 */
inline Corpus make_corpus(const std::vector<std::string> &lines, std::size_t test_count,
                          const std::string &reserved_first = "") {
    if (lines.empty()) {
        throw EncodingError("empty corpus");
    }
    if (test_count >= lines.size()) {
        throw EncodingError("test split would consume the whole corpus");
    }
    const std::size_t train_count = lines.size() - test_count;

    std::vector<std::string> ordered;
    if (!reserved_first.empty()) {
        ordered.push_back(reserved_first);
    }
    std::vector<std::vector<std::string>> tokenized;
    for (const auto &line : lines) {
        tokenized.push_back(tokenize_line(line));
        if (tokenized.back().empty()) {
            throw EncodingError("blank sentence in corpus");
        }
    }
    for (std::size_t i = 0; i < train_count; ++i) {
        for (const auto &tok : tokenized[i]) {
            if (std::find(ordered.begin(), ordered.end(), tok) == ordered.end()) {
                ordered.push_back(tok);
            }
        }
    }

    Corpus corpus;
    corpus.vocab = Vocabulary(std::move(ordered));
    for (std::size_t i = 0; i < tokenized.size(); ++i) {
        std::vector<TokenId> ids;
        for (const auto &tok : tokenized[i]) {
            ids.push_back(corpus.vocab.id(tok)); // throws on out-of-train-vocabulary tokens
        }
        corpus.sentences.push_back(std::move(ids));
        if (i < train_count) {
            corpus.train_indices.push_back(i);
        } else {
            corpus.test_indices.push_back(i);
        }
    }
    return corpus;
}

} // namespace qnlp
