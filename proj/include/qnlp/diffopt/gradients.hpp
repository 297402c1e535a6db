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
 * Gradients of circuit expectations: two-point parameter-shift rule,
 * adjoint-state sweep, and the central finite-difference oracle.
 *
 * The two-point rule g = [E(t + pi/2) - E(t - pi/2)] / 2 is exact for plain
 * rotation gates but not for a controlled rotation applied natively (its
 * generator has eigenvalues {0, +-1/2}, so E mixes two frequencies). Before
 * shifting, parameterized single-control rotations are therefore rewritten
 * into the exact CNOT + half-angle identity
 *
 *   cR(t) = [CX, R(-t/2), CX, R(t/2)]   (R = RY or RZ; RX via H-conjugated RZ)
 *
 * after which every parameterized occurrence is a plain rotation and the rule
 * holds occurrence-by-occurrence. The adjoint sweep handles controlled
 * rotations natively via the projected derivative.
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/diffopt/observable.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qnlp {

namespace detail {

inline void append_decomposed_controlled_rotation(Circuit &out, const GateOp &op) {
    if (op.controls.size() != 1) {
        throw UnsupportedGateError(
            "parameter-shift supports parameterized rotations with at most one control");
    }
    const std::uint32_t control = op.controls[0].qubit;
    const std::uint32_t target = op.targets.at(0);
    const bool open = op.controls[0].polarity == Polarity::Open;
    const std::string &name = out.param_names.at(*op.param_slot);
    const double s = op.param_scale;

    if (open) {
        out.x(control);
    }
    switch (op.axis) {
    case RotationAxis::RY:
        out.cnot(control, target);
        out.ry(target, name, -s / 2.0);
        out.cnot(control, target);
        out.ry(target, name, s / 2.0);
        break;
    case RotationAxis::RZ:
        out.cnot(control, target);
        out.rz(target, name, -s / 2.0);
        out.cnot(control, target);
        out.rz(target, name, s / 2.0);
        break;
    case RotationAxis::RX:
        // RX(t) = H RZ(-t) H under this project's RX sign convention.
        out.h(target);
        out.cnot(control, target);
        out.rz(target, name, s / 2.0);
        out.cnot(control, target);
        out.rz(target, name, -s / 2.0);
        out.h(target);
        break;
    }
    if (open) {
        out.x(control);
    }
}

} // namespace detail

/**
 * @brief Equivalent circuit in which every parameterized gate is a plain
 * (uncontrolled) rotation, as required by the two-point shift rule.
 */
inline Circuit shift_rule_form(const Circuit &circuit) {
    Circuit out;
    out.width = circuit.width;
    out.param_names = circuit.param_names;
    for (const auto &op : circuit.ops) {
        if (!op.param_slot.has_value()) {
            out.push(op);
            continue;
        }
        if (!op.is_rotation()) {
            throw UnsupportedGateError("parameterized gate is not a rotation");
        }
        if (op.controls.empty() && op.kind != GateKind::MCU) {
            out.push(op);
            continue;
        }
        if (op.kind == GateKind::MCU && op.controls.empty()) {
            // Uncontrolled MCU degenerates to the plain rotation of its axis.
            GateOp plain = op;
            plain.kind = op.axis == RotationAxis::RX
                             ? GateKind::RX
                             : op.axis == RotationAxis::RY ? GateKind::RY : GateKind::RZ;
            out.push(std::move(plain));
            continue;
        }
        detail::append_decomposed_controlled_rotation(out, op);
    }
    return out;
}

namespace detail {

/// Runs `circuit` with op `shift_index`'s effective angle offset by `delta`.
inline double shifted_expectation(const Circuit &circuit, std::span<const double> params,
                                  const DiagonalObservable &obs, const StateVector &initial,
                                  std::size_t shift_index, double delta) {
    StateVector state = initial;
    for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
        const auto &op = circuit.ops[k];
        if (op.param_slot.has_value()) {
            // Offset is applied to the effective gate angle, so it bypasses
            // param_scale: pass (scale*theta + delta) / scale ... instead we
            // bind the angle directly through a fixed-angle copy.
            const double angle =
                op.param_scale * params[*op.param_slot] + (k == shift_index ? delta : 0.0);
            GateOp bound = op;
            bound.param_slot.reset();
            bound.param_scale = 1.0;
            bound.fixed_angle = angle;
            apply_gate(state, bound);
        } else {
            apply_gate(state, op);
        }
    }
    return obs.expectation(state);
}

} // namespace detail

/**
 * @brief Exact gradient of obs-expectation via the two-point parameter-shift
 * rule, g_j = [E(theta_j + pi/2) - E(theta_j - pi/2)] / 2 per occurrence.
 *
 * Requires every parameterized gate to be RX/RY/RZ or a single-control MCU
 * rotation; anything else raises UnsupportedGateError.
 */
inline std::vector<double> parameter_shift_grad(const Circuit &circuit,
                                                std::span<const double> params,
                                                const DiagonalObservable &obs,
                                                const StateVector *initial = nullptr) {
    require_aligned(circuit, params);
    if (!is_unitary(circuit)) {
        throw UnsupportedGateError("parameter-shift requires a unitary circuit");
    }
    const Circuit shifted = shift_rule_form(circuit);
    const StateVector start = initial ? *initial : StateVector(circuit.width);

    std::vector<double> grad(circuit.num_params(), 0.0);
    constexpr double half_pi = 1.5707963267948966;
    for (std::size_t k = 0; k < shifted.ops.size(); ++k) {
        const auto &op = shifted.ops[k];
        if (!op.param_slot.has_value()) {
            continue;
        }
        const double plus = detail::shifted_expectation(shifted, params, obs, start, k, half_pi);
        const double minus =
            detail::shifted_expectation(shifted, params, obs, start, k, -half_pi);
        grad[*op.param_slot] += op.param_scale * 0.5 * (plus - minus);
    }
    return grad;
}

namespace detail {

/// state <- dU/d(angle) |state> for a (possibly controlled) rotation op.
/// Non-matching control components are annihilated (projected derivative).
inline void apply_rotation_derivative(StateVector &state, const GateOp &op, double angle) {
    const auto cm = control_mask(op.controls);
    const Matrix2 du = rotation_matrix_derivative(
        op.kind == GateKind::MCU
            ? op.axis
            : op.kind == GateKind::RX ? RotationAxis::RX
                                      : op.kind == GateKind::RY ? RotationAxis::RY
                                                                : RotationAxis::RZ,
        angle);
    const std::size_t tbit = std::size_t{1} << op.targets.at(0);
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i & tbit) {
            continue;
        }
        if (!cm.matches(i)) {
            state[i] = Amplitude{0.0, 0.0};
            state[i | tbit] = Amplitude{0.0, 0.0};
            continue;
        }
        const Amplitude a0 = state[i];
        const Amplitude a1 = state[i | tbit];
        state[i] = du[0] * a0 + du[1] * a1;
        state[i | tbit] = du[2] * a0 + du[3] * a1;
    }
}

inline GateOp bound_copy(const GateOp &op, std::span<const double> params) {
    GateOp bound = op;
    if (op.param_slot.has_value()) {
        bound.param_slot.reset();
        bound.param_scale = 1.0;
        bound.fixed_angle = op.param_scale * params[*op.param_slot];
    }
    return bound;
}

inline GateOp inverse_op(const GateOp &op) {
    GateOp inv = op;
    if (op.is_rotation()) {
        inv.fixed_angle = -*inv.fixed_angle;
    } else if (op.kind == GateKind::RESET) {
        throw UnsupportedGateError("RESET cannot be inverted");
    }
    return inv;
}

} // namespace detail

/**
 * @brief Exact gradient via one forward and one backward statevector sweep.
 *
 * Works for any unitary circuit whose parameterized gates are rotations
 * (controlled rotations handled natively). RESET raises
 * UnsupportedGateError.
 */
inline std::vector<double> adjoint_grad(const Circuit &circuit, std::span<const double> params,
                                        const DiagonalObservable &obs,
                                        const StateVector *initial = nullptr) {
    require_aligned(circuit, params);
    if (!is_unitary(circuit)) {
        throw UnsupportedGateError("adjoint differentiation requires a unitary circuit");
    }
    for (const auto &op : circuit.ops) {
        if (op.param_slot.has_value() && !op.is_rotation()) {
            throw UnsupportedGateError("parameterized gate is not a rotation");
        }
    }

    std::vector<double> grad(circuit.num_params(), 0.0);
    if (circuit.num_params() == 0) {
        return grad;
    }

    // Forward pass, keeping bound copies so the backward pass can invert.
    std::vector<GateOp> bound;
    bound.reserve(circuit.ops.size());
    StateVector phi = initial ? *initial : StateVector(circuit.width);
    for (const auto &op : circuit.ops) {
        bound.push_back(detail::bound_copy(op, params));
        apply_gate(phi, bound.back());
    }

    StateVector lambda = phi;
    obs.apply_inplace(lambda);

    for (std::size_t k = circuit.ops.size(); k-- > 0;) {
        const GateOp &op = bound[k];
        apply_gate(phi, detail::inverse_op(op)); // phi = state before op k
        if (circuit.ops[k].param_slot.has_value()) {
            StateVector mu = phi;
            detail::apply_rotation_derivative(mu, op, *op.fixed_angle);
            const Amplitude overlap = inner_product(lambda, mu);
            grad[*circuit.ops[k].param_slot] +=
                2.0 * overlap.real() * circuit.ops[k].param_scale;
        }
        // lambda is an observable-weighted co-state, not unit norm.
        detail::apply_gate_unchecked(lambda, detail::inverse_op(op));
    }
    return grad;
}

/// Empirical expectation of a diagonal observable from sampled shots.
inline double sampled_expectation(const StateVector &state, const DiagonalObservable &obs,
                                  std::size_t shots, std::uint64_t seed) {
    const auto draws = sample(state, shots, seed);
    double acc = 0.0;
    for (const auto d : draws) {
        acc += obs.diag.at(d);
    }
    return acc / static_cast<double>(shots);
}

/**
 * @brief Parameter-shift gradient with shot-estimated expectations.
 *
 * Identical structure to parameter_shift_grad, but every shifted circuit is
 * evaluated from `shots` sampled draws (streams split off `rng` in a fixed
 * order), the way hardware would estimate it. Estimates carry O(1/sqrt(shots))
 * noise.
 */
inline std::vector<double> parameter_shift_grad_sampled(const Circuit &circuit,
                                                        std::span<const double> params,
                                                        const DiagonalObservable &obs,
                                                        std::size_t shots, Rng &rng,
                                                        const StateVector *initial = nullptr) {
    require_aligned(circuit, params);
    if (!is_unitary(circuit)) {
        throw UnsupportedGateError("parameter-shift requires a unitary circuit");
    }
    const Circuit shifted = shift_rule_form(circuit);
    const StateVector start = initial ? *initial : StateVector(circuit.width);

    std::vector<double> grad(circuit.num_params(), 0.0);
    constexpr double half_pi = 1.5707963267948966;
    std::uint64_t stream = 0;
    for (std::size_t k = 0; k < shifted.ops.size(); ++k) {
        const auto &op = shifted.ops[k];
        if (!op.param_slot.has_value()) {
            continue;
        }
        double estimates[2];
        for (int side = 0; side < 2; ++side) {
            StateVector state = start;
            for (std::size_t j = 0; j < shifted.ops.size(); ++j) {
                const auto &gate = shifted.ops[j];
                if (gate.param_slot.has_value()) {
                    GateOp bound = gate;
                    bound.param_slot.reset();
                    bound.param_scale = 1.0;
                    bound.fixed_angle = gate.param_scale * params[*gate.param_slot] +
                                        (j == k ? (side == 0 ? half_pi : -half_pi) : 0.0);
                    apply_gate(state, bound);
                } else {
                    apply_gate(state, gate);
                }
            }
            estimates[side] = sampled_expectation(state, obs, shots, rng.split(stream++).seed());
        }
        grad[*op.param_slot] += op.param_scale * 0.5 * (estimates[0] - estimates[1]);
    }
    return grad;
}

/// Scalar loss contract used by the finite-difference oracle.
using ScalarLossFn = std::function<double(std::span<const double>)>;

/// Central finite differences, one pair of evaluations per coordinate.
inline std::vector<double> finite_diff_grad(const ScalarLossFn &loss,
                                            std::span<const double> params, double h) {
    if (h < 1e-7 || h > 1e-3) {
        throw ParameterError("finite-difference step outside [1e-7, 1e-3]");
    }
    std::vector<double> work(params.begin(), params.end());
    std::vector<double> grad(params.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
        const double saved = work[j];
        work[j] = saved + h;
        const double plus = loss(work);
        work[j] = saved - h;
        const double minus = loss(work);
        work[j] = saved;
        grad[j] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

/// Expectation of `obs` after running `circuit` from |0...0> (or `initial`).
inline double circuit_expectation(const Circuit &circuit, std::span<const double> params,
                                  const DiagonalObservable &obs,
                                  const StateVector *initial = nullptr) {
    StateVector state = initial ? *initial : StateVector(circuit.width);
    apply_circuit_inplace(circuit, params, state);
    return obs.expectation(state);
}

} // namespace qnlp
