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
 * Dense statevector over a register of qubits.
 *
 * Bit-order convention, used everywhere in this project: basis index bit k
 * corresponds to qubit k, i.e. the "top" qubit of a register diagram is the
 * least significant bit of the basis index. Basis index 5 = 0b101 means
 * qubit 0 = 1, qubit 1 = 0, qubit 2 = 1.
 */
#pragma once

#include "qnlp/core/errors.hpp"
#include "qnlp/core/rng.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qnlp {

using Amplitude = std::complex<double>;

/// Widest register the toolkit will simulate (128 MiB of amplitudes).
inline constexpr std::uint32_t kMaxQubits = 24;

/// Norm drift beyond this after a unitary operation is treated as a kernel bug.
inline constexpr double kNormTolerance = 1e-10;

class StateVector {
  public:
    /// Constructs |0...0> on `width` qubits.
    explicit StateVector(std::uint32_t width) : width_(width) {
        if (width < 1 || width > kMaxQubits) {
            throw CapacityError("statevector width " + std::to_string(width) +
                                " outside supported range [1, " + std::to_string(kMaxQubits) +
                                "]");
        }
        amps_.assign(std::size_t{1} << width, Amplitude{0.0, 0.0});
        amps_[0] = Amplitude{1.0, 0.0};
    }

    std::uint32_t width() const { return width_; }
    std::size_t size() const { return amps_.size(); }

    Amplitude &operator[](std::size_t i) { return amps_[i]; }
    const Amplitude &operator[](std::size_t i) const { return amps_[i]; }

    std::vector<Amplitude> &amplitudes() { return amps_; }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }

    double norm_squared() const {
        double total = 0.0;
        for (const auto &a : amps_) {
            total += std::norm(a);
        }
        return total;
    }

    /// Throws NormError if the norm drifted beyond tolerance.
    void check_norm() const {
        const double n = norm_squared();
        if (std::abs(n - 1.0) > kNormTolerance) {
            throw NormError("statevector norm^2 = " + std::to_string(n) +
                            " drifted beyond tolerance");
        }
    }

    void require_qubit(std::uint32_t qubit) const {
        if (qubit >= width_) {
            throw IndexError("qubit " + std::to_string(qubit) + " out of range for width " +
                             std::to_string(width_));
        }
    }

  private:
    std::uint32_t width_;
    std::vector<Amplitude> amps_;
};

/// |0...0> on `width` qubits. Throws CapacityError outside [1, kMaxQubits].
inline StateVector zero_state(std::uint32_t width) { return StateVector(width); }

/// Born-rule probabilities p_i = |amp_i|^2.
inline std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> probs(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        probs[i] = std::norm(state[i]);
    }
    return probs;
}

/// <a|b> with conjugation on `a`.
inline Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.width() != b.width()) {
        throw WidthMismatchError("inner_product: widths " + std::to_string(a.width()) + " vs " +
                                 std::to_string(b.width()));
    }
    Amplitude acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// <Z_qubit> = p(qubit = 0) - p(qubit = 1).
inline double expectation_z(const StateVector &state, std::uint32_t qubit) {
    state.require_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double value = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        value += (i & bit) ? -std::norm(state[i]) : std::norm(state[i]);
    }
    return value;
}

/**
 * @brief Draws `shots` i.i.d. basis indices from the Born distribution.
 *
 * Identical (state, shots, seed) produce identical draws.
 */
inline std::vector<std::uint64_t> sample(const StateVector &state, std::size_t shots,
                                         std::uint64_t seed) {
    Rng rng(seed);
    // Inverse-CDF sampling over the cumulative distribution.
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        acc += std::norm(state[i]);
        cdf[i] = acc;
    }
    const double total = acc;
    std::vector<std::uint64_t> draws(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.next_double() * total;
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
        draws[s] = lo;
    }
    return draws;
}

/**
 * @brief Sampling in fixed-size batches with per-batch RNG streams.
 *
 * Batches are independent streams split from `seed`, so the concatenated
 * result is the same whether batches run sequentially or concurrently.
 */
inline std::vector<std::uint64_t> sample_batched(const StateVector &state, std::size_t shots,
                                                 std::uint64_t seed,
                                                 std::size_t batch_size = 4096) {
    Rng root(seed);
    std::vector<std::uint64_t> draws;
    draws.reserve(shots);
    std::size_t produced = 0;
    for (std::uint64_t batch = 0; produced < shots; ++batch) {
        const std::size_t count = std::min(batch_size, shots - produced);
        auto part = sample(state, count, root.split(batch).seed());
        draws.insert(draws.end(), part.begin(), part.end());
        produced += count;
    }
    return draws;
}

/**
 * @brief Projects `qubit` onto `value` and renormalizes.
 *
 * Returns the renormalized state and the pre-normalization probability mass
 * of the selected outcome. Throws ImpossibleOutcomeError when that mass is
 * below 1e-12.
 */
inline std::pair<StateVector, double> post_select(const StateVector &state, std::uint32_t qubit,
                                                  int value) {
    state.require_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double mass = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const bool is_one = (i & bit) != 0;
        if (is_one == (value != 0)) {
            mass += std::norm(state[i]);
        }
    }
    if (mass < 1e-12) {
        throw ImpossibleOutcomeError("post_select: outcome qubit " + std::to_string(qubit) + "=" +
                                     std::to_string(value) + " has probability " +
                                     std::to_string(mass));
    }
    StateVector out = state;
    const double scale = 1.0 / std::sqrt(mass);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const bool is_one = (i & bit) != 0;
        if (is_one == (value != 0)) {
            out[i] *= scale;
        } else {
            out[i] = Amplitude{0.0, 0.0};
        }
    }
    return {std::move(out), mass};
}

/**
 * @brief Measures `qubit` in the computational basis (consuming a draw from
 * `rng`), then flips it to |0> if the outcome was 1.
 */
inline StateVector reset_qubit(const StateVector &state, std::uint32_t qubit, Rng &rng) {
    state.require_qubit(qubit);
    const std::size_t bit = std::size_t{1} << qubit;
    double mass_one = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & bit) {
            mass_one += std::norm(state[i]);
        }
    }
    const int outcome = rng.next_double() < mass_one ? 1 : 0;
    auto [collapsed, mass] = post_select(state, qubit, outcome);
    (void)mass;
    if (outcome == 1) {
        // Flip the measured qubit back to |0>.
        for (std::size_t i = 0; i < collapsed.size(); ++i) {
            if (i & bit) {
                std::swap(collapsed[i & ~bit], collapsed[i]);
            }
        }
    }
    return std::move(collapsed);
}

/// Seed-taking overload; stochastic single-call form.
inline StateVector reset_qubit(const StateVector &state, std::uint32_t qubit,
                               std::uint64_t seed) {
    Rng rng(seed);
    return reset_qubit(state, qubit, rng);
}

} // namespace qnlp
