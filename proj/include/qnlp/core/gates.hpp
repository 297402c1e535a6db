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
 * Gate descriptions and statevector kernels.
 *
 * Rotation conventions:
 *   RX(t) = [[cos t/2,  i sin t/2], [i sin t/2, cos t/2]]
 *   RY(t) = [[cos t/2, -sin t/2],  [sin t/2,   cos t/2]]
 *   RZ(t) = diag(exp(-i t/2), exp(+i t/2))
 * Multi-controlled gates act natively on the statevector: the target update
 * is applied only on basis states whose control qubits match their declared
 * polarity (OPEN = |0>, CLOSED = |1>); no decomposition into CNOTs.
 */
#pragma once

#include "qnlp/core/errors.hpp"
#include "qnlp/core/state_vector.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qnlp {

enum class GateKind { X, H, RX, RY, RZ, CNOT, SWAP, MCX, MCU, RESET };

/// Control activation: OPEN fires on |0>, CLOSED fires on |1>.
enum class Polarity { Open, Closed };

struct ControlSpec {
    std::uint32_t qubit;
    Polarity polarity;

    bool operator==(const ControlSpec &) const = default;
};

/// Axis of the single-qubit rotation carried by an MCU gate.
enum class RotationAxis { RX, RY, RZ };

/**
 * @brief One gate application.
 *
 * Rotation kinds (RX/RY/RZ and MCU) carry either a `param_slot` into the
 * owning circuit's parameter list or a `fixed_angle`, never both. The
 * effective angle of a slot-bound gate is `param_scale * value`, which lets
 * inverse circuits reuse the forward parameters.
 */
struct GateOp {
    GateKind kind;
    std::vector<std::uint32_t> targets;
    std::vector<ControlSpec> controls;
    RotationAxis axis = RotationAxis::RY; // meaningful for MCU only
    std::optional<std::uint32_t> param_slot;
    std::optional<double> fixed_angle;
    double param_scale = 1.0;

    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
               kind == GateKind::MCU;
    }
};

inline const char *gate_kind_name(GateKind kind) {
    switch (kind) {
    case GateKind::X:
        return "X";
    case GateKind::H:
        return "H";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::SWAP:
        return "SWAP";
    case GateKind::MCX:
        return "MCX";
    case GateKind::MCU:
        return "MCU";
    case GateKind::RESET:
        return "RESET";
    }
    return "?";
}

using Matrix2 = std::array<Amplitude, 4>; // row-major [[m00 m01], [m10 m11]]

inline Matrix2 rotation_matrix(RotationAxis axis, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (axis) {
    case RotationAxis::RX:
        return {Amplitude{c, 0}, Amplitude{0, s}, Amplitude{0, s}, Amplitude{c, 0}};
    case RotationAxis::RY:
        return {Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0}, Amplitude{c, 0}};
    case RotationAxis::RZ:
        return {std::polar(1.0, -angle / 2.0), Amplitude{0, 0}, Amplitude{0, 0},
                std::polar(1.0, angle / 2.0)};
    }
    throw ParameterError("unknown rotation axis");
}

/// d/dt of rotation_matrix(axis, t).
inline Matrix2 rotation_matrix_derivative(RotationAxis axis, double angle) {
    const double c = 0.5 * std::cos(angle / 2.0);
    const double s = 0.5 * std::sin(angle / 2.0);
    switch (axis) {
    case RotationAxis::RX:
        return {Amplitude{-s, 0}, Amplitude{0, c}, Amplitude{0, c}, Amplitude{-s, 0}};
    case RotationAxis::RY:
        return {Amplitude{-s, 0}, Amplitude{-c, 0}, Amplitude{c, 0}, Amplitude{-s, 0}};
    case RotationAxis::RZ: {
        const Amplitude d0 = Amplitude{0, -0.5} * std::polar(1.0, -angle / 2.0);
        const Amplitude d1 = Amplitude{0, 0.5} * std::polar(1.0, angle / 2.0);
        return {d0, Amplitude{0, 0}, Amplitude{0, 0}, d1};
    }
    }
    throw ParameterError("unknown rotation axis");
}

inline Matrix2 x_matrix() {
    return {Amplitude{0, 0}, Amplitude{1, 0}, Amplitude{1, 0}, Amplitude{0, 0}};
}

inline Matrix2 h_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{-r, 0}};
}

namespace detail {

/// Control-match mask/value pair: index i matches iff (i & mask) == value.
struct ControlMask {
    std::size_t mask = 0;
    std::size_t value = 0;

    bool matches(std::size_t index) const { return (index & mask) == value; }
};

inline ControlMask control_mask(const std::vector<ControlSpec> &controls) {
    ControlMask cm;
    for (const auto &c : controls) {
        const std::size_t bit = std::size_t{1} << c.qubit;
        cm.mask |= bit;
        if (c.polarity == Polarity::Closed) {
            cm.value |= bit;
        }
    }
    return cm;
}

/// Applies a 2x2 matrix to `target`, restricted to control-matching indices.
inline void apply_controlled_1q(StateVector &state, std::uint32_t target, const Matrix2 &u,
                                const ControlMask &cm) {
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & tbit) || !cm.matches(i) || !cm.matches(i | tbit)) {
            continue;
        }
        const Amplitude a0 = state[i];
        const Amplitude a1 = state[i | tbit];
        state[i] = u[0] * a0 + u[1] * a1;
        state[i | tbit] = u[2] * a0 + u[3] * a1;
    }
}

inline void apply_swap(StateVector &state, std::uint32_t q0, std::uint32_t q1) {
    const std::size_t b0 = std::size_t{1} << q0;
    const std::size_t b1 = std::size_t{1} << q1;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if ((i & b0) && !(i & b1)) {
            std::swap(state[i], state[(i & ~b0) | b1]);
        }
    }
}

} // namespace detail

namespace detail {

inline void validate_gate_shape(const StateVector &state, const GateOp &op) {
    for (auto t : op.targets) {
        state.require_qubit(t);
    }
    for (const auto &c : op.controls) {
        state.require_qubit(c.qubit);
        for (auto t : op.targets) {
            if (c.qubit == t) {
                throw IndexError("gate control and target overlap on qubit " +
                                 std::to_string(c.qubit));
            }
        }
    }
}

} // namespace detail

namespace detail {

/**
 * @brief Gate dispatch without the post-application norm check; used
 * internally on co-states (e.g. the adjoint sweep's observable-weighted
 * vector) that are not unit-norm by construction.
 */
inline void apply_gate_unchecked(StateVector &state, const GateOp &op,
                                 std::optional<double> bound_angle = std::nullopt,
                                 Rng *rng = nullptr) {
    detail::validate_gate_shape(state, op);

    std::optional<double> angle = op.fixed_angle;
    if (op.param_slot.has_value()) {
        if (!bound_angle.has_value()) {
            throw ParameterError("rotation parameter is unbound");
        }
        angle = op.param_scale * *bound_angle;
    }
    if (op.is_rotation() && !angle.has_value()) {
        throw ParameterError("rotation gate has neither fixed angle nor bound parameter");
    }

    const auto cm = detail::control_mask(op.controls);
    switch (op.kind) {
    case GateKind::X:
        detail::apply_controlled_1q(state, op.targets.at(0), x_matrix(), cm);
        break;
    case GateKind::H:
        detail::apply_controlled_1q(state, op.targets.at(0), h_matrix(), cm);
        break;
    case GateKind::RX:
        detail::apply_controlled_1q(state, op.targets.at(0),
                                    rotation_matrix(RotationAxis::RX, *angle), cm);
        break;
    case GateKind::RY:
        detail::apply_controlled_1q(state, op.targets.at(0),
                                    rotation_matrix(RotationAxis::RY, *angle), cm);
        break;
    case GateKind::RZ:
        detail::apply_controlled_1q(state, op.targets.at(0),
                                    rotation_matrix(RotationAxis::RZ, *angle), cm);
        break;
    case GateKind::CNOT:
    case GateKind::MCX:
        if (op.controls.empty()) {
            throw ParameterError("controlled X without controls");
        }
        detail::apply_controlled_1q(state, op.targets.at(0), x_matrix(), cm);
        break;
    case GateKind::MCU:
        detail::apply_controlled_1q(state, op.targets.at(0), rotation_matrix(op.axis, *angle),
                                    cm);
        break;
    case GateKind::SWAP: {
        if (op.targets.size() != 2) {
            throw ParameterError("SWAP requires exactly two targets");
        }
        if (op.controls.empty()) {
            detail::apply_swap(state, op.targets[0], op.targets[1]);
        } else {
            // Controlled SWAP: permute only control-matching index pairs.
            const std::size_t b0 = std::size_t{1} << op.targets[0];
            const std::size_t b1 = std::size_t{1} << op.targets[1];
            for (std::size_t i = 0; i < state.size(); ++i) {
                if ((i & b0) && !(i & b1) && cm.matches(i)) {
                    std::swap(state[i], state[(i & ~b0) | b1]);
                }
            }
        }
        break;
    }
    case GateKind::RESET: {
        if (rng == nullptr) {
            throw ParameterError("RESET requires a random stream");
        }
        state = reset_qubit(state, op.targets.at(0), *rng);
        return; // reset renormalizes internally
    }
    }
}

} // namespace detail

/**
 * @brief Applies one gate in place.
 *
 * Rotation kinds take their angle from `bound_angle` when the op carries a
 * parameter slot, or from `fixed_angle`; a slot with no bound angle is a
 * ParameterError. RESET consumes a draw from `rng` and is an error without
 * one. The norm is verified after every unitary kind; drift beyond tolerance
 * raises NormError (a kernel bug, never silently renormalized).
 */
inline void apply_gate(StateVector &state, const GateOp &op,
                       std::optional<double> bound_angle = std::nullopt, Rng *rng = nullptr) {
    detail::apply_gate_unchecked(state, op, bound_angle, rng);
    if (op.kind != GateKind::RESET) {
        state.check_norm();
    }
}

// --- Convenience constructors -------------------------------------------

inline GateOp make_x(std::uint32_t target) { return GateOp{GateKind::X, {target}, {}}; }

inline GateOp make_h(std::uint32_t target) { return GateOp{GateKind::H, {target}, {}}; }

inline GateOp make_rotation(GateKind kind, std::uint32_t target, double angle) {
    GateOp op{kind, {target}, {}};
    op.axis = kind == GateKind::RX ? RotationAxis::RX
                                   : kind == GateKind::RZ ? RotationAxis::RZ : RotationAxis::RY;
    op.fixed_angle = angle;
    return op;
}

inline GateOp make_cnot(std::uint32_t control, std::uint32_t target) {
    return GateOp{GateKind::CNOT, {target}, {ControlSpec{control, Polarity::Closed}}};
}

inline GateOp make_swap(std::uint32_t a, std::uint32_t b) {
    return GateOp{GateKind::SWAP, {a, b}, {}};
}

inline GateOp make_mcx(std::vector<ControlSpec> controls, std::uint32_t target) {
    return GateOp{GateKind::MCX, {target}, std::move(controls)};
}

inline GateOp make_reset(std::uint32_t target) { return GateOp{GateKind::RESET, {target}, {}}; }

} // namespace qnlp
