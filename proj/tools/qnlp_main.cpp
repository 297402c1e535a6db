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
 * qnlp: command-line front end.
 *
 * Subcommands: encode / decode (positional string encoding),
 * train-embed / eval-embed (word embeddings), train-seq / eval-seq /
 * generate (sequence models). All metrics go to stdout as line-delimited
 * records; runs with identical configs and seeds produce byte-identical
 * output. Exit codes: 0 ok, 2 usage error, 3 bad input file, 4
 * simulation/training error.
 */

#include "qnlp/qnlp.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qnlp;

bool g_quiet = false;

void note(const std::string &line) {
    if (!g_quiet) {
        std::printf("# %s\n", line.c_str());
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file '" + path + "'");
    }
    out << content;
}

std::vector<std::string> read_lines(const std::string &path) {
    std::istringstream in(read_file(path));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            lines.push_back(line);
        }
    }
    return lines;
}

unsigned env_thread_count() {
    if (const char *value = std::getenv("QNLP_THREADS")) {
        const long n = std::strtol(value, nullptr, 10);
        if (n >= 1) {
            return static_cast<unsigned>(n);
        }
    }
    return 1;
}

/// Batched sampling, optionally fanned out over threads; the per-batch RNG
/// streams make the concatenated result independent of the thread count.
std::vector<std::uint64_t> parallel_sample(const StateVector &state, std::size_t shots,
                                           std::uint64_t seed, unsigned threads) {
    constexpr std::size_t kBatch = 4096;
    if (threads <= 1 || shots <= kBatch) {
        return sample_batched(state, shots, seed, kBatch);
    }
    Rng root(seed);
    std::vector<std::future<std::vector<std::uint64_t>>> futures;
    std::size_t produced = 0;
    for (std::uint64_t batch = 0; produced < shots; ++batch) {
        const std::size_t count = std::min(kBatch, shots - produced);
        const std::uint64_t stream_seed = root.split(batch).seed();
        futures.push_back(std::async(std::launch::async, [&state, count, stream_seed] {
            return sample(state, count, stream_seed);
        }));
        produced += count;
    }
    std::vector<std::uint64_t> draws;
    draws.reserve(shots);
    for (auto &f : futures) { // joined in batch order: deterministic
        const auto part = f.get();
        draws.insert(draws.end(), part.begin(), part.end());
    }
    return draws;
}

qpostr::AlphabetMap load_alphabet(const std::string &name) {
    if (name == "abc") {
        return qpostr::AlphabetMap::abc();
    }
    if (name == "lowercase") {
        return qpostr::AlphabetMap::lowercase();
    }
    if (name == "printable") {
        return qpostr::AlphabetMap::printable();
    }
    // Otherwise a file: its first line lists the characters in code order.
    const auto text = read_file(name);
    const auto end = text.find('\n');
    const std::string chars = end == std::string::npos ? text : text.substr(0, end);
    if (chars.empty()) {
        throw IoError("alphabet file '" + name + "' is empty");
    }
    return qpostr::AlphabetMap(std::vector<char>(chars.begin(), chars.end()));
}

Corpus load_corpus(const std::string &name, std::size_t test_count) {
    if (name == "builtin") {
        return seqgen::builtin_corpus();
    }
    if (name == "builtin-toy") {
        return embed::builtin_toy_corpus();
    }
    return make_corpus(read_lines(name), test_count);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// --- encode ----------------------------------------------------------------

struct EncodeArgs {
    std::string text;
    std::string alphabet = "abc";
    std::string out_path;
};

int run_encode(const EncodeArgs &args) {
    const auto alphabet = load_alphabet(args.alphabet);
    const auto circuit = qpostr::build_encoding_circuit(args.text, alphabet);
    const auto layout = qpostr::layout_for(args.text, alphabet);
    const std::string serialized = serialize_circuit(circuit);

    if (!args.out_path.empty()) {
        write_file(args.out_path, serialized);
        note("circuit written to " + args.out_path);
    } else {
        std::fputs(serialized.c_str(), stdout);
    }

    note("analytic amplitude table (position register = low bits)");
    const auto state = qpostr::expected_state(args.text, alphabet);
    for (std::size_t p = 0; p < layout.positions(); ++p) {
        const std::uint32_t code =
            p < args.text.size() ? alphabet.code_of(args.text[p]) : 0;
        const std::size_t index = (static_cast<std::size_t>(code) << layout.pos_bits) | p;
        std::printf("amplitude index=%zu position=%zu char=%c re=%s im=%s\n", index, p,
                    alphabet.char_of(code), format_double(state[index].real()).c_str(),
                    format_double(state[index].imag()).c_str());
    }

    const auto est = qpostr::resource_estimate(
        std::max<std::uint64_t>(args.text.size(), 2), alphabet.size());
    std::printf("resources pos_bits=%u char_bits=%u total_qubits=%u\n", est.pos_bits,
                est.char_bits, est.total_qubits);
    return 0;
}

// --- decode ----------------------------------------------------------------

struct DecodeArgs {
    std::string text;
    std::string alphabet = "abc";
    std::size_t shots = 10000;
    std::uint64_t seed = 0;
};

int run_decode(const DecodeArgs &args) {
    const auto alphabet = load_alphabet(args.alphabet);
    const auto circuit = qpostr::build_readout_circuit(args.text, alphabet);
    const qpostr::ReadoutLayout layout{qpostr::layout_for(args.text, alphabet)};

    const auto state = run_circuit(circuit);
    const auto draws = parallel_sample(state, args.shots, args.seed, env_thread_count());
    const auto histogram = qpostr::decode_samples(draws, layout, alphabet);

    for (const auto &[position, counts] : histogram) {
        for (const auto &[ch, count] : counts) {
            std::printf("position=%zu char=%c count=%zu\n", position, ch, count);
        }
    }
    std::printf("reconstructed=\"%s\"\n",
                qpostr::reconstruct_text(histogram, layout, alphabet).c_str());
    std::printf("shots_for_full_recovery confidence=0.99 shots=%llu\n",
                static_cast<unsigned long long>(
                    qpostr::shots_for_recovery(layout.base.positions(), 0.99)));
    return 0;
}

// --- train-embed / eval-embed ----------------------------------------------

struct TrainEmbedArgs {
    std::string corpus = "builtin-toy";
    std::string scheme = "circuit";
    std::size_t epochs = 150;
    std::uint64_t seed = 7;
    double learning_rate = 0.05;
    std::uint32_t window = 2;
    std::uint32_t negatives = 2;
    std::uint32_t qubits = 3;
    std::uint32_t layers = 2;
    std::string method = "sgns";
    std::string out_path;
};

int run_train_embed(const TrainEmbedArgs &args) {
    const auto corpus = load_corpus(args.corpus, 0);
    const auto scheme = args.scheme == "memory" ? embed::EmbedScheme::MemoryEfficient
                                                : embed::EmbedScheme::CircuitEfficient;
    auto model =
        embed::init_embedding_model(corpus.vocab, scheme, args.qubits, args.layers, args.seed);

    if (scheme == embed::EmbedScheme::MemoryEfficient && args.epochs > 0) {
        throw UnsupportedGateError(
            "training is defined for the circuit-efficient scheme; use --scheme circuit "
            "(--scheme memory with --epochs 0 saves an untrained model)");
    }

    TrainResult trace;
    if (args.epochs > 0) {
        if (args.method == "sgns") {
            embed::SgnsConfig config;
            config.window = args.window;
            config.negatives = args.negatives;
            config.epochs = args.epochs;
            config.learning_rate = args.learning_rate;
            config.seed = args.seed;
            auto out = embed::train_sgns(corpus, std::move(model), config);
            model = std::move(out.model);
            trace = std::move(out.trace);

            const auto report = embed::fidelity_separation(model, out.pairs);
            for (std::size_t e = 0; e < trace.loss_history.size(); ++e) {
                std::puts(format_trace_line(e, trace.loss_history[e],
                                            trace.grad_norm_history[e])
                              .c_str());
            }
            std::printf("separation positive=%s negative=%s delta=%s\n",
                        format_double(report.mean_positive).c_str(),
                        format_double(report.mean_negative).c_str(),
                        format_double(report.separation()).c_str());
        } else if (args.method == "skipgram" || args.method == "cbow") {
            embed::Word2vecConfig config;
            config.window = args.window;
            config.epochs = args.epochs;
            config.learning_rate = args.learning_rate;
            config.seed = args.seed;
            auto head = embed::init_prediction_head(
                std::max(args.qubits, corpus.vocab.index_bits()), args.layers, args.seed + 1);
            auto out = args.method == "skipgram"
                           ? embed::train_skipgram(corpus, std::move(model), std::move(head),
                                                   config)
                           : embed::train_cbow(corpus, std::move(model), std::move(head),
                                               config);
            model = std::move(out.model);
            trace = std::move(out.trace);
            for (std::size_t e = 0; e < trace.loss_history.size(); ++e) {
                std::puts(format_trace_line(e, trace.loss_history[e],
                                            trace.grad_norm_history[e])
                              .c_str());
            }
        } else {
            throw CLI::ValidationError("--method must be sgns, skipgram, or cbow");
        }
        std::printf("best_loss=%s\n", format_double(trace.best_loss).c_str());
    }

    if (!args.out_path.empty()) {
        write_file(args.out_path, embed::serialize_embedding(model));
        note("embedding checkpoint written to " + args.out_path);
    }
    return 0;
}

struct EvalEmbedArgs {
    std::string ckpt_path;
    std::string pairs_path;
};

int run_eval_embed(const EvalEmbedArgs &args) {
    const auto model = embed::parse_embedding(read_file(args.ckpt_path));
    for (const auto &line : read_lines(args.pairs_path)) {
        const auto tokens = tokenize_line(line);
        if (tokens.size() != 2) {
            throw IoError("pair line needs exactly two tokens: '" + line + "'");
        }
        const auto a = embed::word_state(model, model.vocab.id(tokens[0]));
        const auto b = embed::word_state(model, model.vocab.id(tokens[1]));
        std::printf("pair=%s,%s fidelity=%s\n", tokens[0].c_str(), tokens[1].c_str(),
                    format_double(embed::fidelity_exact(a, b)).c_str());
    }
    return 0;
}

// --- train-seq / eval-seq / generate ----------------------------------------

struct TrainSeqArgs {
    std::string corpus = "builtin";
    std::string arch = "proposed";
    std::size_t epochs = 150;
    std::uint64_t seed = 11;
    double learning_rate = 0.05;
    std::size_t test_count = 0;
    std::string grad = "adjoint";
    std::size_t shots = 0;
    std::string out_path;
};

int run_train_seq(const TrainSeqArgs &args) {
    const auto corpus = load_corpus(args.corpus, args.test_count);

    seqgen::SeqModelSpec spec;
    if (args.arch == "proposed") {
        spec = seqgen::proposed_default_spec();
    } else if (args.arch == "london") {
        spec = seqgen::london_lm_spec();
    } else {
        throw CLI::ValidationError("--arch must be proposed or london");
    }
    if (corpus.vocab.index_bits() > spec.bits_per_token) {
        throw EncodingError("corpus vocabulary needs " +
                            std::to_string(corpus.vocab.index_bits()) +
                            " bits per token, model encodes " +
                            std::to_string(spec.bits_per_token));
    }

    auto ckpt = seqgen::init_checkpoint(spec, corpus.vocab, args.seed);
    seqgen::SeqTrainConfig config;
    config.epochs = args.epochs;
    config.learning_rate = args.learning_rate;
    config.seed = args.seed;
    config.grad_method = args.grad == "shift" ? seqgen::GradMethod::ParameterShift
                                              : seqgen::GradMethod::Adjoint;
    config.shots = args.shots;

    auto out = seqgen::train_seq(std::move(ckpt), corpus, config);
    for (std::size_t e = 0; e < out.trace.loss_history.size(); ++e) {
        std::puts(
            format_trace_line(e, out.trace.loss_history[e], out.trace.grad_norm_history[e])
                .c_str());
    }
    std::printf("best_train_nll=%s\n", format_double(out.trace.best_loss).c_str());
    std::printf("train_perplexity=%s\n",
                format_double(seqgen::perplexity(out.checkpoint, corpus, false)).c_str());
    if (!corpus.test_indices.empty()) {
        std::printf("test_perplexity=%s\n",
                    format_double(seqgen::perplexity(out.checkpoint, corpus, true)).c_str());
    }

    if (!args.out_path.empty()) {
        write_file(args.out_path, seqgen::serialize_checkpoint(out.checkpoint));
        note("checkpoint written to " + args.out_path);
    }
    return 0;
}

struct EvalSeqArgs {
    std::string ckpt_path;
    std::string corpus = "builtin";
    std::string split = "test";
    std::size_t test_count = 0;
    bool uniform = false;
};

int run_eval_seq(const EvalSeqArgs &args) {
    const auto corpus = load_corpus(args.corpus, args.test_count);
    const bool test_split = args.split != "train";

    if (args.uniform) {
        std::printf("model=uniform\n");
        std::printf("perplexity=%s\n",
                    format_double(seqgen::uniform_perplexity(corpus, test_split)).c_str());
        return 0;
    }
    if (args.ckpt_path.empty()) {
        throw CLI::ValidationError("eval-seq needs --ckpt (or --uniform)");
    }
    const auto ckpt = seqgen::parse_checkpoint(read_file(args.ckpt_path));
    const double nll = seqgen::nll_loss(ckpt, corpus, test_split);
    std::printf("nll=%s\n", format_double(nll).c_str());
    std::printf("perplexity=%s\n", format_double(std::exp(nll)).c_str());
    return 0;
}

struct GenerateArgs {
    std::string ckpt_path;
    std::string prompt;
    std::size_t length = 8;
    std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs &args) {
    const auto ckpt = seqgen::parse_checkpoint(read_file(args.ckpt_path));
    std::vector<TokenId> prompt_ids;
    for (const auto &token : tokenize_line(args.prompt)) {
        prompt_ids.push_back(ckpt.vocab.id(token));
    }
    const auto tokens = seqgen::generate(ckpt, prompt_ids, args.length, args.seed);
    std::string joined;
    for (const auto id : tokens) {
        if (!joined.empty()) {
            joined += ' ';
        }
        joined += ckpt.vocab.token(id);
    }
    std::printf("generated=%s\n", joined.c_str());
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qnlp: statevector QNLP toolkit (positional string encoding, quantum "
                 "word embeddings, autoregressive sequence models)"};
    app.require_subcommand(1);
    app.set_config("--config")->description("key=value config file; flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    int config_version = 1;
    app.add_option("--config-version", config_version, "config schema version")
        ->default_val(1);
    app.add_flag("--quiet", g_quiet, "suppress # comment lines");
    std::uint64_t global_seed = 0;
    auto *global_seed_opt =
        app.add_option("--seed", global_seed, "default seed for any subcommand");

    EncodeArgs encode_args;
    auto *encode = app.add_subcommand("encode", "serialize a QPOSTR encoding circuit");
    encode->add_option("--text", encode_args.text, "string to encode")->required();
    encode->add_option("--alphabet", encode_args.alphabet,
                       "abc | lowercase | printable | <file>");
    encode->add_option("--out", encode_args.out_path, "write the circuit here");

    DecodeArgs decode_args;
    auto *decode = app.add_subcommand("decode", "sample the readout circuit and decode");
    decode->add_option("--text", decode_args.text, "string to encode and read back")
        ->required();
    decode->add_option("--alphabet", decode_args.alphabet,
                       "abc | lowercase | printable | <file>");
    decode->add_option("--shots", decode_args.shots, "number of shots");
    auto *decode_seed = decode->add_option("--seed", decode_args.seed, "sampling seed");

    TrainEmbedArgs embed_args;
    auto *train_embed = app.add_subcommand("train-embed", "train quantum word embeddings");
    train_embed->add_option("--corpus", embed_args.corpus, "corpus file or builtin-toy");
    train_embed->add_option("--scheme", embed_args.scheme, "circuit | memory");
    train_embed->add_option("--epochs", embed_args.epochs, "training epochs");
    auto *embed_seed = train_embed->add_option("--seed", embed_args.seed, "seed");
    train_embed->add_option("--lr", embed_args.learning_rate, "learning rate");
    train_embed->add_option("--window", embed_args.window, "context window radius");
    train_embed->add_option("--negatives", embed_args.negatives, "negatives per pair");
    train_embed->add_option("--qubits", embed_args.qubits, "word-state qubits");
    train_embed->add_option("--layers", embed_args.layers, "ansatz layers");
    train_embed->add_option("--method", embed_args.method, "sgns | skipgram | cbow");
    train_embed->add_option("--out", embed_args.out_path, "checkpoint path");

    EvalEmbedArgs eval_embed_args;
    auto *eval_embed = app.add_subcommand("eval-embed", "fidelities for token pairs");
    eval_embed->add_option("--ckpt", eval_embed_args.ckpt_path, "embedding checkpoint")
        ->required();
    eval_embed->add_option("--pairs", eval_embed_args.pairs_path, "two tokens per line")
        ->required();

    TrainSeqArgs seq_args;
    auto *train_seq = app.add_subcommand("train-seq", "train a sequence model");
    train_seq->add_option("--corpus", seq_args.corpus, "corpus file or builtin");
    train_seq->add_option("--arch", seq_args.arch, "proposed | london");
    train_seq->add_option("--epochs", seq_args.epochs, "training epochs");
    auto *seq_seed = train_seq->add_option("--seed", seq_args.seed, "seed");
    train_seq->add_option("--lr", seq_args.learning_rate, "learning rate");
    train_seq->add_option("--test-count", seq_args.test_count,
                          "trailing sentences held out (file corpora)");
    train_seq->add_option("--grad", seq_args.grad, "adjoint | shift");
    train_seq->add_option("--shots", seq_args.shots,
                          "estimate probabilities/gradients from this many shots (0 = exact)");
    train_seq->add_option("--out", seq_args.out_path, "checkpoint path");

    EvalSeqArgs eval_seq_args;
    auto *eval_seq = app.add_subcommand("eval-seq", "perplexity of a checkpoint");
    eval_seq->add_option("--ckpt", eval_seq_args.ckpt_path, "sequence checkpoint");
    eval_seq->add_option("--corpus", eval_seq_args.corpus, "corpus file or builtin");
    eval_seq->add_option("--split", eval_seq_args.split, "test | train");
    eval_seq->add_option("--test-count", eval_seq_args.test_count,
                         "trailing sentences held out (file corpora)");
    eval_seq->add_flag("--uniform", eval_seq_args.uniform, "evaluate the uniform baseline");

    GenerateArgs gen_args;
    auto *generate = app.add_subcommand("generate", "autoregressive sampling");
    generate->add_option("--ckpt", gen_args.ckpt_path, "sequence checkpoint")->required();
    generate->add_option("--prompt", gen_args.prompt, "whitespace-separated prompt tokens");
    generate->add_option("--length", gen_args.length, "tokens to generate");
    auto *gen_seed = generate->add_option("--seed", gen_args.seed, "sampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }

    // The global --seed backfills any subcommand seed not set explicitly.
    if (global_seed_opt->count() > 0) {
        if (decode_seed->count() == 0) {
            decode_args.seed = global_seed;
        }
        if (embed_seed->count() == 0) {
            embed_args.seed = global_seed;
        }
        if (seq_seed->count() == 0) {
            seq_args.seed = global_seed;
        }
        if (gen_seed->count() == 0) {
            gen_args.seed = global_seed;
        }
    }

    try {
        if (config_version != 1) {
            throw IoError("unsupported config version " + std::to_string(config_version));
        }
        if (encode->parsed()) {
            note("cmd=encode text=" + encode_args.text + " alphabet=" + encode_args.alphabet);
            return run_encode(encode_args);
        }
        if (decode->parsed()) {
            note("cmd=decode text=" + decode_args.text + " alphabet=" + decode_args.alphabet +
                 " shots=" + std::to_string(decode_args.shots) +
                 " seed=" + std::to_string(decode_args.seed));
            return run_decode(decode_args);
        }
        if (train_embed->parsed()) {
            note("cmd=train-embed corpus=" + embed_args.corpus + " scheme=" +
                 embed_args.scheme + " method=" + embed_args.method + " epochs=" +
                 std::to_string(embed_args.epochs) + " seed=" + std::to_string(embed_args.seed));
            return run_train_embed(embed_args);
        }
        if (eval_embed->parsed()) {
            note("cmd=eval-embed ckpt=" + eval_embed_args.ckpt_path);
            return run_eval_embed(eval_embed_args);
        }
        if (train_seq->parsed()) {
            note("cmd=train-seq corpus=" + seq_args.corpus + " arch=" + seq_args.arch +
                 " epochs=" + std::to_string(seq_args.epochs) +
                 " seed=" + std::to_string(seq_args.seed) +
                 " lr=" + format_double(seq_args.learning_rate));
            return run_train_seq(seq_args);
        }
        if (eval_seq->parsed()) {
            note("cmd=eval-seq split=" + eval_seq_args.split + " corpus=" +
                 eval_seq_args.corpus);
            return run_eval_seq(eval_seq_args);
        }
        if (generate->parsed()) {
            note("cmd=generate ckpt=" + gen_args.ckpt_path + " length=" +
                 std::to_string(gen_args.length) + " seed=" + std::to_string(gen_args.seed));
            return run_generate(gen_args);
        }
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const CLI::Error &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const IoError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 3;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
