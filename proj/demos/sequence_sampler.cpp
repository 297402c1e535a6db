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
//
// Trains the 9-qubit sequence generator on the builtin corpus, reports
// train/test perplexity against the uniform baseline, then samples a few
// sentences token by token (one shot per token).

#include "qnlp/qnlp.hpp"

#include <cstdio>

int main() {
    using namespace qnlp;
    const auto corpus = seqgen::builtin_corpus();
    std::printf("corpus: %zu sentences, vocabulary %zu, split %zu train / %zu test\n",
                corpus.sentences.size(), corpus.vocab.size(), corpus.train_indices.size(),
                corpus.test_indices.size());
    std::printf("uniform baseline perplexity: %.2f\n\n",
                seqgen::uniform_perplexity(corpus, true));

    auto ckpt = seqgen::init_checkpoint(seqgen::proposed_default_spec(), corpus.vocab, 1);
    std::printf("model: %u qubits, %zu parameters\n", ckpt.spec.total_qubits(),
                ckpt.params.size());

    seqgen::SeqTrainConfig config;
    config.epochs = 120;
    config.seed = 1;
    std::printf("training %zu epochs...\n", config.epochs);
    const auto out = seqgen::train_seq(std::move(ckpt), corpus, config);
    std::printf("train perplexity: %.3f\n", seqgen::perplexity(out.checkpoint, corpus, false));
    std::printf("test  perplexity: %.3f\n\n", seqgen::perplexity(out.checkpoint, corpus, true));

    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const std::vector<TokenId> prompt{out.checkpoint.vocab.id("the")};
        const auto tokens = seqgen::generate(out.checkpoint, prompt, 7, seed);
        std::printf("sample %llu: the", static_cast<unsigned long long>(seed));
        for (const auto id : tokens) {
            std::printf(" %s", out.checkpoint.vocab.token(id).c_str());
        }
        std::printf("\n");
    }
    return 0;
}
