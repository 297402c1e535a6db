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
 * Diagonal (computational-basis) observables. Every expectation this toolkit
 * differentiates (Pauli-Z, basis projectors, and the frozen-weight loss
 * observables built from Born probabilities) is diagonal, which keeps the
 * adjoint sweep to one elementwise multiply.
 */
#pragma once

#include "qnlp/core/errors.hpp"
#include "qnlp/core/state_vector.hpp"

#include <cstdint>
#include <vector>

namespace qnlp {

struct DiagonalObservable {
    std::vector<double> diag; // one entry per basis state

    double expectation(const StateVector &state) const {
        if (diag.size() != state.size()) {
            throw WidthMismatchError("observable dimension does not match state");
        }
        double value = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
            value += diag[i] * std::norm(state[i]);
        }
        return value;
    }

    /// state <- O|state> (elementwise).
    void apply_inplace(StateVector &state) const {
        if (diag.size() != state.size()) {
            throw WidthMismatchError("observable dimension does not match state");
        }
        for (std::size_t i = 0; i < state.size(); ++i) {
            state[i] *= diag[i];
        }
    }
};

/// Z on one qubit: +1 where the qubit is 0, -1 where it is 1.
inline DiagonalObservable z_observable(std::uint32_t width, std::uint32_t qubit) {
    DiagonalObservable obs;
    obs.diag.assign(std::size_t{1} << width, 1.0);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < obs.diag.size(); ++i) {
        if (i & bit) {
            obs.diag[i] = -1.0;
        }
    }
    return obs;
}

/// Projector onto a single basis state.
inline DiagonalObservable basis_projector(std::uint32_t width, std::size_t basis_index) {
    DiagonalObservable obs;
    obs.diag.assign(std::size_t{1} << width, 0.0);
    obs.diag.at(basis_index) = 1.0;
    return obs;
}

} // namespace qnlp
