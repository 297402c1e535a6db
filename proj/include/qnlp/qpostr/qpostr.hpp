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
 * QPOSTR positional string encoding.
 *
 * A string is stored as a uniform superposition over character positions,
 * entangling a position register (qubits 0..n-1, top qubit = least
 * significant bit) with a character register (qubits n..n+m-1):
 *
 *   |text> = 2^{-n/2} sum_p |p>_P |c_p>_C
 *
 * Character codes are alphabet-ordinal binary with code 0 reserved for the
 * space/padding character, so a string is implicitly padded with trailing
 * zeros up to 2^n positions. The readout construction appends an m-qubit
 * output register and copies the character register into it per position.
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/core/errors.hpp"
#include "qnlp/core/state_vector.hpp"
#include "qnlp/text/vocabulary.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qnlp::qpostr {

/**
 * @brief Ordered character set; index 0 is the space/padding character.
 */
class AlphabetMap {
  public:
    explicit AlphabetMap(std::vector<char> chars) : chars_(std::move(chars)) {
        if (chars_.size() < 2) {
            throw EncodingError("alphabet needs at least 2 characters");
        }
        for (std::size_t i = 0; i < chars_.size(); ++i) {
            for (std::size_t j = i + 1; j < chars_.size(); ++j) {
                if (chars_[i] == chars_[j]) {
                    throw EncodingError(std::string("duplicate alphabet character '") +
                                        chars_[i] + "'");
                }
            }
        }
    }

    /// The worked-example alphabet {space, a, b, c} (a=01, b=10, c=11).
    static AlphabetMap abc() { return AlphabetMap({' ', 'a', 'b', 'c'}); }

    /// Space plus the 26 lowercase letters (5 character qubits).
    static AlphabetMap lowercase() {
        std::vector<char> chars{' '};
        for (char c = 'a'; c <= 'z'; ++c) {
            chars.push_back(c);
        }
        return AlphabetMap(std::move(chars));
    }

    /// The printable 7-bit character set, space first (7 character qubits).
    static AlphabetMap printable() {
        std::vector<char> chars;
        for (char c = ' '; c <= '~'; ++c) {
            chars.push_back(c);
        }
        return AlphabetMap(std::move(chars));
    }

    std::size_t size() const { return chars_.size(); }

    std::uint32_t char_bits() const {
        return std::max<std::uint32_t>(1, ceil_log2_u64(chars_.size()));
    }

    char padding() const { return chars_[0]; }

    std::uint32_t code_of(char c) const {
        for (std::size_t i = 0; i < chars_.size(); ++i) {
            if (chars_[i] == c) {
                return static_cast<std::uint32_t>(i);
            }
        }
        throw EncodingError(std::string("character '") + c + "' not in alphabet");
    }

    char char_of(std::uint32_t code) const {
        if (code >= chars_.size()) {
            throw DecodeError("character code " + std::to_string(code) +
                              " outside alphabet of size " + std::to_string(chars_.size()));
        }
        return chars_[code];
    }

  private:
    std::vector<char> chars_;
};

/// Position/character register split for one encoded string.
struct QpostrLayout {
    std::uint32_t pos_bits = 0;  // n
    std::uint32_t char_bits = 0; // m
    std::size_t text_length = 0; // L <= 2^n

    std::uint32_t total_qubits() const { return pos_bits + char_bits; }
    std::size_t positions() const { return std::size_t{1} << pos_bits; }

    /// Position qubits are 0..n-1, character qubits n..n+m-1.
    std::uint32_t char_qubit(std::uint32_t bit) const { return pos_bits + bit; }
};

/// Layout plus the appended m-qubit output register.
struct ReadoutLayout {
    QpostrLayout base;

    std::uint32_t total_qubits() const { return base.pos_bits + 2 * base.char_bits; }
    std::uint32_t output_qubit(std::uint32_t bit) const {
        return base.pos_bits + base.char_bits + bit;
    }
};

/**
 * @brief Register sizes for `text`: n = ceil(log2(max(L, 2))) position bits
 * (length-1 strings still get one position qubit), m from the alphabet.
 */
inline QpostrLayout layout_for(const std::string &text, const AlphabetMap &alphabet) {
    for (char c : text) {
        alphabet.code_of(c); // throws EncodingError on unknown characters
    }
    QpostrLayout layout;
    layout.text_length = text.size();
    layout.pos_bits = std::max<std::uint32_t>(1, ceil_log2_u64(std::max<std::uint64_t>(
                                                     text.size(), 2)));
    layout.char_bits = alphabet.char_bits();
    if (layout.total_qubits() > kMaxQubits) {
        throw CapacityError("QPOSTR layout needs " + std::to_string(layout.total_qubits()) +
                            " qubits, above the simulator cap");
    }
    return layout;
}

/// Control pattern selecting position `p` on the position register.
inline std::vector<ControlSpec> position_controls(const QpostrLayout &layout, std::size_t p) {
    std::vector<ControlSpec> controls;
    for (std::uint32_t b = 0; b < layout.pos_bits; ++b) {
        controls.push_back(
            ControlSpec{b, (p >> b) & 1 ? Polarity::Closed : Polarity::Open});
    }
    return controls;
}

/**
 * @brief Hadamards on the position register, then one multi-controlled block
 * per non-padding position writing that position's character code.
 */
inline Circuit build_encoding_circuit(const std::string &text, const AlphabetMap &alphabet) {
    const QpostrLayout layout = layout_for(text, alphabet);
    Circuit circuit;
    circuit.width = layout.total_qubits();
    for (std::uint32_t q = 0; q < layout.pos_bits; ++q) {
        circuit.h(q);
    }
    for (std::size_t p = 0; p < text.size(); ++p) {
        const std::uint32_t code = alphabet.code_of(text[p]);
        if (code == 0) {
            continue; // spaces coincide with the padding convention
        }
        const auto controls = position_controls(layout, p);
        for (std::uint32_t b = 0; b < layout.char_bits; ++b) {
            if ((code >> b) & 1) {
                circuit.mcx(controls, layout.char_qubit(b));
            }
        }
    }
    return circuit;
}

/**
 * @brief The target state built analytically (no simulator): amplitude
 * 2^{-n/2} on |p>_P |c_p>_C for every position p, padding beyond the text.
 *
 * Serves as the independent oracle for build_encoding_circuit.
 */
inline StateVector expected_state(const std::string &text, const AlphabetMap &alphabet) {
    const QpostrLayout layout = layout_for(text, alphabet);
    StateVector state(layout.total_qubits());
    state[0] = Amplitude{0.0, 0.0};
    const double amp = std::pow(2.0, -0.5 * layout.pos_bits);
    for (std::size_t p = 0; p < layout.positions(); ++p) {
        const std::uint32_t code = p < text.size() ? alphabet.code_of(text[p]) : 0;
        const std::size_t index = (static_cast<std::size_t>(code) << layout.pos_bits) | p;
        state[index] = Amplitude{amp, 0.0};
    }
    return state;
}

/**
 * @brief Encoding circuit extended with the output register: for every
 * position p and character bit b, a multi-controlled X copies character
 * qubit b into output qubit b when the position register equals p.
 */
inline Circuit build_readout_circuit(const std::string &text, const AlphabetMap &alphabet) {
    const QpostrLayout layout = layout_for(text, alphabet);
    const ReadoutLayout readout{layout};
    Circuit circuit = build_encoding_circuit(text, alphabet);
    circuit.width = readout.total_qubits();
    for (std::size_t p = 0; p < layout.positions(); ++p) {
        for (std::uint32_t b = 0; b < layout.char_bits; ++b) {
            auto controls = position_controls(layout, p);
            controls.push_back(ControlSpec{layout.char_qubit(b), Polarity::Closed});
            circuit.mcx(std::move(controls), readout.output_qubit(b));
        }
    }
    return circuit;
}

/// Per-position histogram of characters decoded from the output register.
using PositionHistogram = std::map<std::size_t, std::map<char, std::size_t>>;

/**
 * @brief Decodes sampled basis indices from the readout circuit.
 *
 * Each shot contributes one (position, character) observation. Positions at
 * or beyond the text length decode to the padding character. A malformed
 * index (outside the register) raises DecodeError.
 */
inline PositionHistogram decode_samples(const std::vector<std::uint64_t> &samples,
                                        const ReadoutLayout &layout,
                                        const AlphabetMap &alphabet) {
    PositionHistogram histogram;
    const std::uint64_t limit = std::uint64_t{1} << layout.total_qubits();
    const std::uint64_t pos_mask = (std::uint64_t{1} << layout.base.pos_bits) - 1;
    const std::uint64_t char_mask = (std::uint64_t{1} << layout.base.char_bits) - 1;
    for (const auto index : samples) {
        if (index >= limit) {
            throw DecodeError("basis index " + std::to_string(index) +
                              " outside a " + std::to_string(layout.total_qubits()) +
                              "-qubit register");
        }
        const std::size_t position = index & pos_mask;
        const std::uint32_t out_code = static_cast<std::uint32_t>(
            (index >> (layout.base.pos_bits + layout.base.char_bits)) & char_mask);
        histogram[position][alphabet.char_of(out_code)] += 1;
    }
    return histogram;
}

/**
 * @brief Rebuilds the text (padded to 2^n with the padding character) from a
 * histogram covering every position. Two distinct characters observed at one
 * position cannot happen in noiseless simulation and raise DecodeError.
 */
inline std::string reconstruct_text(const PositionHistogram &histogram,
                                    const ReadoutLayout &layout, const AlphabetMap &alphabet) {
    std::string text(layout.base.positions(), alphabet.padding());
    for (const auto &[position, counts] : histogram) {
        if (position >= text.size()) {
            throw DecodeError("position " + std::to_string(position) + " outside layout");
        }
        if (counts.size() != 1) {
            throw DecodeError("conflicting characters observed at position " +
                              std::to_string(position));
        }
        text[position] = counts.begin()->first;
    }
    return text;
}

struct ResourceEstimate {
    std::uint32_t pos_bits = 0;
    std::uint32_t char_bits = 0;
    std::uint32_t total_qubits = 0;
};

/// (ceil(log2 positions), ceil(log2 alphabet), sum): the m+n qubit count.
inline ResourceEstimate resource_estimate(std::uint64_t char_positions,
                                          std::uint64_t alphabet_size) {
    if (char_positions < 1 || alphabet_size < 1) {
        throw ParameterError("resource_estimate requires positive counts");
    }
    ResourceEstimate est;
    est.pos_bits = ceil_log2_u64(char_positions);
    est.char_bits = ceil_log2_u64(alphabet_size);
    est.total_qubits = est.pos_bits + est.char_bits;
    return est;
}

/**
 * @brief Coupon-collector shot estimate: the smallest s with
 * (1 - (1 - 1/P)^s)^P >= confidence.
 *
 * Reading out a full P-position string needs every position to be hit at
 * least once, and each shot lands on a uniform random position.
 */
inline std::uint64_t shots_for_recovery(std::uint64_t positions, double confidence) {
    if (confidence <= 0.0 || confidence >= 1.0) {
        throw ParameterError("confidence must lie in (0, 1)");
    }
    if (positions <= 1) {
        return 1;
    }
    const double p = static_cast<double>(positions);
    const auto coverage = [p](double s) {
        // exp(P * log1p(-(1-1/P)^s)), kept in log space for accuracy
        return std::exp(p * std::log1p(-std::exp(s * std::log1p(-1.0 / p))));
    };
    // Closed-form estimate, then settle the boundary exactly.
    double guess = std::log1p(-std::pow(confidence, 1.0 / p)) / std::log1p(-1.0 / p);
    std::uint64_t s = guess < 1.0 ? 1 : static_cast<std::uint64_t>(guess);
    while (s > 1 && coverage(static_cast<double>(s - 1)) >= confidence) {
        --s;
    }
    while (coverage(static_cast<double>(s)) < confidence) {
        ++s;
    }
    return s;
}

} // namespace qnlp::qpostr
