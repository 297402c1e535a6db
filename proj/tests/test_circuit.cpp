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

#include "oracle_dense.hpp"
#include "qnlp/core/circuit.hpp"
#include "qnlp/core/circuit_text.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qnlp;

TEST_CASE("an empty circuit is the identity") {
    Circuit circuit;
    circuit.width = 3;
    Rng rng(1);
    const auto initial = testing::random_state(3, rng);
    const auto out = apply_circuit(circuit, {}, initial);
    for (std::size_t i = 0; i < initial.size(); ++i) {
        CHECK(out[i] == initial[i]);
    }
}

TEST_CASE("X applied twice is the identity") {
    Circuit circuit;
    circuit.width = 2;
    circuit.x(0).x(0);
    Rng rng(2);
    const auto initial = testing::random_state(2, rng);
    const auto out = apply_circuit(circuit, {}, initial);
    for (std::size_t i = 0; i < initial.size(); ++i) {
        CHECK(std::abs(out[i] - initial[i]) < 1e-15);
    }
}

TEST_CASE("parameter binding and misalignment") {
    Circuit circuit;
    circuit.width = 1;
    circuit.ry(0, "theta");

    const std::vector<double> params{1.234};
    const auto state = run_circuit(circuit, params);
    CHECK(std::abs(state[0] - Amplitude{std::cos(0.617), 0.0}) < 1e-12);
    CHECK(std::abs(state[1] - Amplitude{std::sin(0.617), 0.0}) < 1e-12);

    CHECK_THROWS_AS(run_circuit(circuit, {}), ParameterError);
    const std::vector<double> too_many{1.0, 2.0};
    CHECK_THROWS_AS(run_circuit(circuit, too_many), ParameterError);

    StateVector narrow(2);
    CHECK_THROWS_AS(apply_circuit_inplace(circuit, params, narrow), WidthMismatchError);
}

TEST_CASE("circuit validation rejects bad wiring") {
    Circuit circuit;
    circuit.width = 2;
    CHECK_THROWS_AS(circuit.x(2), IndexError);
    CHECK_THROWS_AS(circuit.mcx({ControlSpec{0, Polarity::Closed}}, 0), IndexError);

    GateOp both{GateKind::RY, {0}, {}};
    both.param_slot = 0;
    both.fixed_angle = 1.0;
    CHECK_THROWS_AS(circuit.push(both), ParameterError);
}

TEST_CASE("random circuits match the dense oracle end to end") {
    Rng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t width = 2 + static_cast<std::uint32_t>(rng.next_below(3));
        Circuit circuit;
        circuit.width = width;
        for (int g = 0; g < 12; ++g) {
            circuit.push(testing::random_gate(width, rng));
        }
        const auto initial = testing::random_state(width, rng);
        const auto kernel = apply_circuit(circuit, {}, initial);
        const auto dense = testing::dense_apply_circuit(circuit, {}, initial.amplitudes());
        for (std::size_t i = 0; i < dense.size(); ++i) {
            CHECK(std::abs(kernel[i] - dense[i]) < 1e-12);
        }
    }
}

TEST_CASE("inverse circuit undoes the forward circuit") {
    Rng rng(31);
    Circuit circuit;
    circuit.width = 3;
    circuit.h(0).cnot(0, 1);
    circuit.ry(2, "a");
    circuit.controlled_rotation(RotationAxis::RZ, {ControlSpec{1, Polarity::Open}}, 2, "b");
    circuit.rx(1, 0.7);

    const std::vector<double> params{0.9, -1.3};
    const auto initial = testing::random_state(3, rng);
    auto state = apply_circuit(circuit, params, initial);
    state = apply_circuit(inverse_circuit(circuit), params, state);
    for (std::size_t i = 0; i < initial.size(); ++i) {
        CHECK(std::abs(state[i] - initial[i]) < 1e-12);
    }

    Circuit with_reset;
    with_reset.width = 1;
    with_reset.reset(0);
    CHECK_THROWS_AS(inverse_circuit(with_reset), UnsupportedGateError);
}

TEST_CASE("RESET inside a circuit needs a random stream") {
    Circuit circuit;
    circuit.width = 1;
    circuit.x(0).reset(0);
    CHECK_THROWS_AS(run_circuit(circuit), ParameterError);

    Rng rng(5);
    const auto state = run_circuit(circuit, {}, &rng);
    CHECK(std::abs(state[0] - Amplitude{1.0, 0.0}) < 1e-15);
    CHECK(is_unitary(circuit) == false);
}

TEST_CASE("serialization round-trips bit-exactly") {
    Circuit circuit;
    circuit.width = 4;
    circuit.h(0);
    circuit.x(3);
    circuit.cnot(0, 2);
    circuit.swap(1, 3);
    circuit.mcx({ControlSpec{0, Polarity::Open}, ControlSpec{1, Polarity::Closed}}, 3);
    circuit.rx(2, 0.1 + 0.2); // deliberately non-representable decimal
    circuit.ry(1, "alpha");
    circuit.rz(0, "beta", -1.0);
    circuit.controlled_rotation(RotationAxis::RY, {ControlSpec{2, Polarity::Closed}}, 1,
                                "alpha", -0.5);
    circuit.controlled_rotation(RotationAxis::RX, {ControlSpec{3, Polarity::Open}}, 0,
                                1.0 / 3.0);
    circuit.reset(2);

    const std::string text = serialize_circuit(circuit);
    const Circuit parsed = parse_circuit(text);

    REQUIRE(parsed.ops.size() == circuit.ops.size());
    CHECK(parsed.width == circuit.width);
    CHECK(parsed.param_names == circuit.param_names);
    for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
        const auto &a = circuit.ops[k];
        const auto &b = parsed.ops[k];
        CHECK(a.kind == b.kind);
        CHECK(a.targets == b.targets);
        CHECK(a.controls == b.controls);
        CHECK(a.axis == b.axis);
        CHECK(a.param_slot == b.param_slot);
        CHECK(a.fixed_angle == b.fixed_angle); // bit-exact
        CHECK(a.param_scale == b.param_scale); // bit-exact
    }
    // Serializing again reproduces the identical document.
    CHECK(serialize_circuit(parsed) == text);
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_circuit(""), IoError);
    CHECK_THROWS_AS(parse_circuit("BOGUS v1 width=2 params=[]\n"), IoError);
    CHECK_THROWS_AS(parse_circuit("QNLP-CIRCUIT v1 width=2 params=[]\nGATE Q targets=[0] "
                                  "controls=[] angle=-\n"),
                    IoError);
    CHECK_THROWS_AS(parse_circuit("QNLP-CIRCUIT v1 width=2 params=[]\nGATE RY targets=[0] "
                                  "controls=[] angle=$ghost\n"),
                    IoError);
}

TEST_CASE("append shifts wires and merges parameters") {
    Circuit inner;
    inner.width = 2;
    inner.ry(0, "t0");
    inner.cnot(0, 1);

    Circuit outer;
    outer.width = 4;
    outer.append(inner, 2);
    REQUIRE(outer.ops.size() == 2);
    CHECK(outer.ops[0].targets[0] == 2);
    CHECK(outer.ops[1].controls[0].qubit == 2);
    CHECK(outer.ops[1].targets[0] == 3);
    CHECK(outer.param_names == std::vector<std::string>{"t0"});

    CHECK_THROWS_AS(outer.append(inner, 3), WidthMismatchError);
}
