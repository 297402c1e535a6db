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
#include "qnlp/diffopt/gradients.hpp"
#include "qnlp/diffopt/optimizer.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace qnlp;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Relative error with a unit floor (gradcheck semantics): pure relative for
// O(1) gradients, absolute at the same tolerance where the norm vanishes and
// "relative" is ill-posed.
double rel_error(std::span<const double> a, std::span<const double> b) {
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += (a[i] - b[i]) * (a[i] - b[i]);
        ref += std::max(a[i] * a[i], b[i] * b[i]);
    }
    return std::sqrt(diff) / std::max(std::sqrt(ref), 1.0);
}

} // namespace

TEST_CASE("shift rule recovers d<Z>/dtheta for RX") {
    Circuit circuit;
    circuit.width = 1;
    circuit.rx(0, "theta");
    const auto obs = z_observable(1, 0);

    // <Z> = cos(theta), so g = -sin(theta).
    const std::vector<double> at_half_pi{kPi / 2.0};
    auto g = parameter_shift_grad(circuit, at_half_pi, obs);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == Catch::Approx(-1.0).margin(1e-12));

    const std::vector<double> at_zero{0.0};
    g = parameter_shift_grad(circuit, at_zero, obs);
    CHECK(g[0] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("shift rule matches finite differences on random circuits") {
    Rng rng(404);
    for (int trial = 0; trial < 12; ++trial) {
        const std::uint32_t width = 2 + static_cast<std::uint32_t>(rng.next_below(3));
        const std::size_t n_params = 3 + rng.next_below(5);
        const Circuit circuit =
            testing::random_parameterized_circuit(width, n_params, 4, rng);
        const auto obs = z_observable(width, static_cast<std::uint32_t>(rng.next_below(width)));

        std::vector<double> params(circuit.num_params());
        for (auto &p : params) {
            p = rng.uniform(-kPi, kPi);
        }

        const auto shift = parameter_shift_grad(circuit, params, obs);
        const auto fd = finite_diff_grad(
            [&](std::span<const double> p) { return circuit_expectation(circuit, p, obs); },
            params, 1e-5);
        CHECK(rel_error(shift, fd) < 1e-6);
    }
}

TEST_CASE("shift rule handles shared slots across occurrences") {
    // theta used by two gates: E = <Z> after RX(theta) RX(theta) = cos(2 theta).
    Circuit circuit;
    circuit.width = 1;
    circuit.rx(0, "theta");
    circuit.rx(0, "theta");
    const auto obs = z_observable(1, 0);
    const std::vector<double> params{0.4};
    const auto g = parameter_shift_grad(circuit, params, obs);
    CHECK(g[0] == Catch::Approx(-2.0 * std::sin(0.8)).margin(1e-12));
}

TEST_CASE("adjoint agrees with the shift rule on random circuits") {
    Rng rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const std::uint32_t width = 2 + static_cast<std::uint32_t>(rng.next_below(3));
        const Circuit circuit =
            testing::random_parameterized_circuit(width, 4 + rng.next_below(6), 3, rng);
        const auto obs = z_observable(width, static_cast<std::uint32_t>(rng.next_below(width)));
        std::vector<double> params(circuit.num_params());
        for (auto &p : params) {
            p = rng.uniform(-kPi, kPi);
        }
        const auto shift = parameter_shift_grad(circuit, params, obs);
        const auto adj = adjoint_grad(circuit, params, obs);
        REQUIRE(shift.size() == adj.size());
        for (std::size_t j = 0; j < shift.size(); ++j) {
            CHECK(std::abs(shift[j] - adj[j]) < 1e-8);
        }
    }
}

TEST_CASE("adjoint on a zero-parameter circuit returns an empty gradient") {
    Circuit circuit;
    circuit.width = 2;
    circuit.h(0).cnot(0, 1);
    CHECK(adjoint_grad(circuit, {}, z_observable(2, 1)).empty());
}

TEST_CASE("RZ before a Z measurement on |0> has zero gradient") {
    Circuit circuit;
    circuit.width = 1;
    circuit.rz(0, "phi");
    const std::vector<double> params{0.9};
    const auto g_adj = adjoint_grad(circuit, params, z_observable(1, 0));
    const auto g_shift = parameter_shift_grad(circuit, params, z_observable(1, 0));
    CHECK(std::abs(g_adj[0]) < 1e-12);
    CHECK(std::abs(g_shift[0]) < 1e-12);
}

TEST_CASE("non-unitary and non-rotation parameterized circuits are rejected") {
    Circuit with_reset;
    with_reset.width = 1;
    with_reset.ry(0, "t");
    with_reset.reset(0);
    const std::vector<double> params{0.1};
    CHECK_THROWS_AS(parameter_shift_grad(with_reset, params, z_observable(1, 0)),
                    UnsupportedGateError);
    CHECK_THROWS_AS(adjoint_grad(with_reset, params, z_observable(1, 0)),
                    UnsupportedGateError);

    // Parameterized rotation with two controls: outside the shift contract.
    Circuit two_controls;
    two_controls.width = 3;
    two_controls.controlled_rotation(
        RotationAxis::RY,
        {ControlSpec{1, Polarity::Closed}, ControlSpec{2, Polarity::Closed}}, 0, "t");
    CHECK_THROWS_AS(parameter_shift_grad(two_controls, params, z_observable(3, 0)),
                    UnsupportedGateError);
}

TEST_CASE("finite differences on analytic losses") {
    const ScalarLossFn quadratic = [](std::span<const double> p) {
        double acc = 0.0;
        for (double v : p) {
            acc += v * v;
        }
        return acc;
    };
    const std::vector<double> at{1.0, 2.0};
    const auto g = finite_diff_grad(quadratic, at, 1e-5);
    CHECK(g[0] == Catch::Approx(2.0).margin(1e-6));
    CHECK(g[1] == Catch::Approx(4.0).margin(1e-6));

    const ScalarLossFn constant = [](std::span<const double>) { return 3.5; };
    for (double v : finite_diff_grad(constant, at, 1e-5)) {
        CHECK(v == 0.0);
    }

    CHECK_THROWS_AS(finite_diff_grad(quadratic, at, 1e-8), ParameterError);
}

TEST_CASE("optimizer_step basics") {
    auto state = OptimizerState::init(2);
    std::vector<double> params{0.5, -0.25};
    const std::vector<double> before = params;

    const std::vector<double> zero{0.0, 0.0};
    optimizer_step(state, params, zero);
    CHECK(params == before);
    CHECK(state.step_count == 1);

    const std::vector<double> grad{1.0, -1.0};
    optimizer_step(state, params, grad);
    CHECK(state.step_count == 2);
    CHECK(params[0] < before[0]);
    CHECK(params[1] > before[1]);

    const std::vector<double> wrong{1.0};
    CHECK_THROWS_AS(optimizer_step(state, params, wrong), ParameterError);
}

TEST_CASE("repeated Adam steps contract a convex loss") {
    auto state = OptimizerState::init(2);
    std::vector<double> params{1.0, 1.0};
    std::vector<double> checkpoints;
    for (int step = 1; step <= 300; ++step) {
        const std::vector<double> grad{2.0 * params[0], 2.0 * params[1]};
        optimizer_step(state, params, grad);
        if (step % 60 == 0) {
            checkpoints.push_back(l2_norm(params));
        }
    }
    // Monotone decrease after warmup, sampled coarsely enough to absorb
    // Adam's local oscillation.
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        CHECK(checkpoints[i] < checkpoints[i - 1]);
    }
    CHECK(checkpoints.back() < 1e-4);
}

TEST_CASE("train contract: zero epochs, convergence, determinism") {
    const LossFn quadratic = [](std::span<const double> p) {
        LossResult r;
        std::vector<double> grad(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            r.loss += p[i] * p[i];
            grad[i] = 2.0 * p[i];
        }
        r.gradient = std::move(grad);
        return r;
    };

    TrainConfig none;
    none.epochs = 0;
    const auto result0 = train(quadratic, {1.0, 2.0}, none);
    CHECK(result0.best_params == std::vector<double>{1.0, 2.0});
    CHECK(result0.loss_history.empty());

    TrainConfig cfg;
    cfg.epochs = 500;
    const auto result = train(quadratic, {1.0, 2.0}, cfg);
    CHECK(result.best_loss < 1e-4);
    CHECK(result.loss_history.size() == 500);

    const auto again = train(quadratic, {1.0, 2.0}, cfg);
    CHECK(again.loss_history == result.loss_history); // bitwise
    CHECK(again.best_params == result.best_params);
}

TEST_CASE("three-way gradient agreement at width 6") {
    Rng rng(6066);
    const Circuit circuit = testing::random_parameterized_circuit(6, 20, 8, rng);
    const auto obs = z_observable(6, 3);
    std::vector<double> params(circuit.num_params());
    for (auto &p : params) {
        p = rng.uniform(-kPi, kPi);
    }
    const auto shift = parameter_shift_grad(circuit, params, obs);
    const auto adj = adjoint_grad(circuit, params, obs);
    const auto fd = finite_diff_grad(
        [&](std::span<const double> p) { return circuit_expectation(circuit, p, obs); }, params,
        1e-5);
    CHECK(rel_error(shift, fd) < 1e-6);
    for (std::size_t j = 0; j < shift.size(); ++j) {
        CHECK(std::abs(shift[j] - adj[j]) < 1e-8);
    }
}

TEST_CASE("trace lines are stable") {
    CHECK(format_trace_line(3, 0.5, 0.25) == "3,0.5,0.25");
}
