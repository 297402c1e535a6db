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
 * Ordered gate programs with symbolic parameters.
 */
#pragma once

#include "qnlp/core/errors.hpp"
#include "qnlp/core/gates.hpp"
#include "qnlp/core/state_vector.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qnlp {

/// Angles in radians, aligned with Circuit::param_names.
using ParameterVector = std::vector<double>;

/**
 * @brief A register width, an ordered gate list, and the names of the
 * symbolic parameters the gates may reference.
 *
 * Circuits are immutable once built (builders return by value); sharing a
 * circuit across threads is safe.
 */
struct Circuit {
    std::uint32_t width = 0;
    std::vector<GateOp> ops;
    std::vector<std::string> param_names;

    std::size_t num_params() const { return param_names.size(); }

    /// Index of `name` in param_names, inserting it if absent.
    std::uint32_t slot(const std::string &name) {
        const auto it = std::find(param_names.begin(), param_names.end(), name);
        if (it != param_names.end()) {
            return static_cast<std::uint32_t>(it - param_names.begin());
        }
        param_names.push_back(name);
        return static_cast<std::uint32_t>(param_names.size() - 1);
    }

    // Fluent builders used throughout the higher-level modules.
    Circuit &x(std::uint32_t q) { return push(make_x(q)); }
    Circuit &h(std::uint32_t q) { return push(make_h(q)); }
    Circuit &cnot(std::uint32_t c, std::uint32_t t) { return push(make_cnot(c, t)); }
    Circuit &swap(std::uint32_t a, std::uint32_t b) { return push(make_swap(a, b)); }
    Circuit &mcx(std::vector<ControlSpec> controls, std::uint32_t t) {
        return push(make_mcx(std::move(controls), t));
    }

    Circuit &rx(std::uint32_t q, double angle) {
        return push(make_rotation(GateKind::RX, q, angle));
    }
    Circuit &ry(std::uint32_t q, double angle) {
        return push(make_rotation(GateKind::RY, q, angle));
    }
    Circuit &rz(std::uint32_t q, double angle) {
        return push(make_rotation(GateKind::RZ, q, angle));
    }

    Circuit &rx(std::uint32_t q, const std::string &name, double scale = 1.0) {
        return push_param(GateKind::RX, q, {}, RotationAxis::RX, name, scale);
    }
    Circuit &ry(std::uint32_t q, const std::string &name, double scale = 1.0) {
        return push_param(GateKind::RY, q, {}, RotationAxis::RY, name, scale);
    }
    Circuit &rz(std::uint32_t q, const std::string &name, double scale = 1.0) {
        return push_param(GateKind::RZ, q, {}, RotationAxis::RZ, name, scale);
    }

    /// Controlled rotation (MCU kind) bound to a named parameter.
    Circuit &controlled_rotation(RotationAxis axis, std::vector<ControlSpec> controls,
                                 std::uint32_t target, const std::string &name,
                                 double scale = 1.0) {
        return push_param(GateKind::MCU, target, std::move(controls), axis, name, scale);
    }

    Circuit &controlled_rotation(RotationAxis axis, std::vector<ControlSpec> controls,
                                 std::uint32_t target, double angle) {
        GateOp op{GateKind::MCU, {target}, std::move(controls)};
        op.axis = axis;
        op.fixed_angle = angle;
        return push(std::move(op));
    }

    Circuit &reset(std::uint32_t q) { return push(make_reset(q)); }

    Circuit &push(GateOp op) {
        validate(op);
        ops.push_back(std::move(op));
        return *this;
    }

    /// Appends `other` with its qubits shifted by `offset`; parameter names
    /// are merged (shared names alias the same slot).
    Circuit &append(const Circuit &other, std::uint32_t offset = 0) {
        if (other.width + offset > width) {
            throw WidthMismatchError("appended circuit does not fit the register");
        }
        for (GateOp op : other.ops) {
            for (auto &t : op.targets) {
                t += offset;
            }
            for (auto &c : op.controls) {
                c.qubit += offset;
            }
            if (op.param_slot.has_value()) {
                op.param_slot = slot(other.param_names.at(*op.param_slot));
            }
            push(std::move(op));
        }
        return *this;
    }

  private:
    Circuit &push_param(GateKind kind, std::uint32_t target, std::vector<ControlSpec> controls,
                        RotationAxis axis, const std::string &name, double scale) {
        GateOp op{kind, {target}, std::move(controls)};
        op.axis = axis;
        op.param_slot = slot(name);
        op.param_scale = scale;
        return push(std::move(op));
    }

    void validate(const GateOp &op) const {
        for (auto t : op.targets) {
            if (t >= width) {
                throw IndexError("gate target " + std::to_string(t) +
                                 " out of range for circuit width " + std::to_string(width));
            }
        }
        for (const auto &c : op.controls) {
            if (c.qubit >= width) {
                throw IndexError("gate control " + std::to_string(c.qubit) +
                                 " out of range for circuit width " + std::to_string(width));
            }
            for (auto t : op.targets) {
                if (c.qubit == t) {
                    throw IndexError("gate control and target overlap on qubit " +
                                     std::to_string(c.qubit));
                }
            }
        }
        if (op.param_slot.has_value() && op.fixed_angle.has_value()) {
            throw ParameterError("gate carries both a parameter slot and a fixed angle");
        }
        if (op.is_rotation() && !op.param_slot.has_value() && !op.fixed_angle.has_value()) {
            throw ParameterError("rotation gate needs a parameter slot or a fixed angle");
        }
    }
};

inline void require_aligned(const Circuit &circuit, std::span<const double> params) {
    if (params.size() != circuit.num_params()) {
        throw ParameterError("parameter vector length " + std::to_string(params.size()) +
                             " does not match circuit parameter count " +
                             std::to_string(circuit.num_params()));
    }
}

/**
 * @brief Applies all ops in order to `state` (in place).
 *
 * `rng` is only consulted for RESET ops; purely unitary circuits are
 * deterministic for fixed inputs.
 */
inline void apply_circuit_inplace(const Circuit &circuit, std::span<const double> params,
                                  StateVector &state, Rng *rng = nullptr) {
    if (state.width() != circuit.width) {
        throw WidthMismatchError("circuit width " + std::to_string(circuit.width) +
                                 " vs state width " + std::to_string(state.width()));
    }
    require_aligned(circuit, params);
    for (const auto &op : circuit.ops) {
        std::optional<double> bound;
        if (op.param_slot.has_value()) {
            bound = params[*op.param_slot];
        }
        apply_gate(state, op, bound, rng);
    }
}

/// Functional form: returns the transformed state.
inline StateVector apply_circuit(const Circuit &circuit, std::span<const double> params,
                                 const StateVector &initial, Rng *rng = nullptr) {
    StateVector state = initial;
    apply_circuit_inplace(circuit, params, state, rng);
    return state;
}

/// Runs the circuit from |0...0>.
inline StateVector run_circuit(const Circuit &circuit, std::span<const double> params = {},
                               Rng *rng = nullptr) {
    StateVector state(circuit.width);
    apply_circuit_inplace(circuit, params, state, rng);
    return state;
}

/**
 * @brief The inverse program: reversed op order, rotations negated.
 *
 * Parameter slots are preserved (negation goes through param_scale), so the
 * inverse circuit is evaluated with the same ParameterVector as the forward
 * one. RESET has no inverse and raises UnsupportedGateError.
 */
inline Circuit inverse_circuit(const Circuit &circuit) {
    Circuit inv;
    inv.width = circuit.width;
    inv.param_names = circuit.param_names;
    for (auto it = circuit.ops.rbegin(); it != circuit.ops.rend(); ++it) {
        GateOp op = *it;
        switch (op.kind) {
        case GateKind::X:
        case GateKind::H:
        case GateKind::CNOT:
        case GateKind::SWAP:
        case GateKind::MCX:
            break; // self-inverse
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::MCU:
            if (op.fixed_angle.has_value()) {
                op.fixed_angle = -*op.fixed_angle;
            } else {
                op.param_scale = -op.param_scale;
            }
            break;
        case GateKind::RESET:
            throw UnsupportedGateError("RESET cannot be inverted");
        }
        inv.ops.push_back(std::move(op));
    }
    return inv;
}

/// True when the circuit contains no RESET op.
inline bool is_unitary(const Circuit &circuit) {
    return std::none_of(circuit.ops.begin(), circuit.ops.end(),
                        [](const GateOp &op) { return op.kind == GateKind::RESET; });
}

} // namespace qnlp
