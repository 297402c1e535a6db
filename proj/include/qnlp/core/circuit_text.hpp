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
 * Line-oriented circuit serialization, one gate per line:
 *
 *   QNLP-CIRCUIT v1 width=<q> params=[name,...]
 *   GATE <kind> targets=[...] controls=[(idx,polarity)...] angle=<radians|$name|->
 *
 * Angles are written as C hexfloats so round-trips are bit-exact. Slot-bound
 * gates with a non-unit parameter scale carry an extra `scale=<hexfloat>`
 * field. MCU gates name their rotation axis as `MCU:RX|RY|RZ`.
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/core/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qnlp {

namespace detail {

inline std::string hexfloat(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", value);
    return buf;
}

inline double parse_double(std::string_view text) {
    const std::string copy(text);
    char *end = nullptr;
    const double value = std::strtod(copy.c_str(), &end);
    if (end != copy.c_str() + copy.size()) {
        throw IoError("malformed number '" + copy + "'");
    }
    return value;
}

inline void check_param_name(const std::string &name) {
    if (name.empty()) {
        throw IoError("empty parameter name");
    }
    for (char ch : name) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '.' || ch == '-';
        if (!ok) {
            throw IoError("parameter name '" + name + "' contains unsupported character");
        }
    }
}

} // namespace detail

inline std::string serialize_circuit(const Circuit &circuit) {
    std::ostringstream out;
    out << "QNLP-CIRCUIT v1 width=" << circuit.width << " params=[";
    for (std::size_t i = 0; i < circuit.param_names.size(); ++i) {
        detail::check_param_name(circuit.param_names[i]);
        out << (i ? "," : "") << circuit.param_names[i];
    }
    out << "]\n";
    for (const auto &op : circuit.ops) {
        out << "GATE " << gate_kind_name(op.kind);
        if (op.kind == GateKind::MCU) {
            out << ':'
                << (op.axis == RotationAxis::RX ? "RX"
                                                : op.axis == RotationAxis::RY ? "RY" : "RZ");
        }
        out << " targets=[";
        for (std::size_t i = 0; i < op.targets.size(); ++i) {
            out << (i ? "," : "") << op.targets[i];
        }
        out << "] controls=[";
        for (std::size_t i = 0; i < op.controls.size(); ++i) {
            out << (i ? "," : "") << '(' << op.controls[i].qubit << ','
                << (op.controls[i].polarity == Polarity::Open ? "open" : "closed") << ')';
        }
        out << "] angle=";
        if (op.param_slot.has_value()) {
            out << '$' << circuit.param_names.at(*op.param_slot);
        } else if (op.fixed_angle.has_value()) {
            out << detail::hexfloat(*op.fixed_angle);
        } else {
            out << '-';
        }
        if (op.param_slot.has_value() && op.param_scale != 1.0) {
            out << " scale=" << detail::hexfloat(op.param_scale);
        }
        out << '\n';
    }
    return out.str();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string &line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

inline std::string_view field_value(std::string_view token, std::string_view key) {
    if (token.substr(0, key.size()) != key) {
        throw IoError("expected field '" + std::string(key) + "' in '" + std::string(token) +
                      "'");
    }
    return token.substr(key.size());
}

inline std::vector<std::string> split_list(std::string_view body) {
    // body is the text between [ and ]; items may be parenthesized pairs.
    std::vector<std::string> items;
    std::string current;
    int depth = 0;
    for (char ch : body) {
        if (ch == '(') {
            ++depth;
        }
        if (ch == ')') {
            --depth;
        }
        if (ch == ',' && depth == 0) {
            items.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) {
        items.push_back(current);
    }
    return items;
}

inline std::string_view strip_brackets(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        throw IoError("expected bracketed list, got '" + std::string(text) + "'");
    }
    return text.substr(1, text.size() - 2);
}

inline std::uint32_t parse_u32(std::string_view text) {
    std::uint32_t value = 0;
    if (text.empty()) {
        throw IoError("empty integer");
    }
    for (char ch : text) {
        if (ch < '0' || ch > '9') {
            throw IoError("malformed integer '" + std::string(text) + "'");
        }
        value = value * 10 + static_cast<std::uint32_t>(ch - '0');
    }
    return value;
}

} // namespace detail

inline Circuit parse_circuit(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("empty circuit document");
    }
    auto header = detail::split_ws(line);
    if (header.size() < 3 || header[0] != "QNLP-CIRCUIT" || header[1] != "v1") {
        throw IoError("missing or unsupported circuit header");
    }
    Circuit circuit;
    circuit.width = detail::parse_u32(detail::field_value(header[2], "width="));
    if (header.size() >= 4) {
        const auto body = detail::strip_brackets(detail::field_value(header[3], "params="));
        for (const auto &name : detail::split_list(body)) {
            detail::check_param_name(name);
            circuit.param_names.push_back(name);
        }
    }

    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto tokens = detail::split_ws(line);
        if (tokens.size() < 4 || tokens[0] != "GATE") {
            throw IoError("malformed gate line '" + line + "'");
        }
        GateOp op{GateKind::X, {}, {}};
        std::string kind = tokens[1];
        if (kind.rfind("MCU:", 0) == 0) {
            op.kind = GateKind::MCU;
            const std::string axis = kind.substr(4);
            if (axis == "RX") {
                op.axis = RotationAxis::RX;
            } else if (axis == "RY") {
                op.axis = RotationAxis::RY;
            } else if (axis == "RZ") {
                op.axis = RotationAxis::RZ;
            } else {
                throw IoError("unknown MCU axis '" + axis + "'");
            }
        } else if (kind == "X") {
            op.kind = GateKind::X;
        } else if (kind == "H") {
            op.kind = GateKind::H;
        } else if (kind == "RX") {
            op.kind = GateKind::RX;
            op.axis = RotationAxis::RX;
        } else if (kind == "RY") {
            op.kind = GateKind::RY;
        } else if (kind == "RZ") {
            op.kind = GateKind::RZ;
            op.axis = RotationAxis::RZ;
        } else if (kind == "CNOT") {
            op.kind = GateKind::CNOT;
        } else if (kind == "SWAP") {
            op.kind = GateKind::SWAP;
        } else if (kind == "MCX") {
            op.kind = GateKind::MCX;
        } else if (kind == "RESET") {
            op.kind = GateKind::RESET;
        } else {
            throw IoError("unknown gate kind '" + kind + "'");
        }

        const auto targets = detail::strip_brackets(detail::field_value(tokens[2], "targets="));
        for (const auto &item : detail::split_list(targets)) {
            op.targets.push_back(detail::parse_u32(item));
        }
        const auto controls =
            detail::strip_brackets(detail::field_value(tokens[3], "controls="));
        for (const auto &item : detail::split_list(controls)) {
            if (item.size() < 5 || item.front() != '(' || item.back() != ')') {
                throw IoError("malformed control '" + item + "'");
            }
            const auto body = item.substr(1, item.size() - 2);
            const auto comma = body.find(',');
            if (comma == std::string::npos) {
                throw IoError("malformed control '" + item + "'");
            }
            ControlSpec spec{};
            spec.qubit = detail::parse_u32(body.substr(0, comma));
            const std::string pol = body.substr(comma + 1);
            if (pol == "open") {
                spec.polarity = Polarity::Open;
            } else if (pol == "closed") {
                spec.polarity = Polarity::Closed;
            } else {
                throw IoError("unknown control polarity '" + pol + "'");
            }
            op.controls.push_back(spec);
        }

        if (tokens.size() >= 5) {
            const auto angle = detail::field_value(tokens[4], "angle=");
            if (angle == "-") {
                // no angle
            } else if (!angle.empty() && angle.front() == '$') {
                const std::string name(angle.substr(1));
                const auto it =
                    std::find(circuit.param_names.begin(), circuit.param_names.end(), name);
                if (it == circuit.param_names.end()) {
                    throw IoError("gate references undeclared parameter '" + name + "'");
                }
                op.param_slot = static_cast<std::uint32_t>(it - circuit.param_names.begin());
            } else {
                op.fixed_angle = detail::parse_double(angle);
            }
        }
        if (tokens.size() >= 6) {
            op.param_scale = detail::parse_double(detail::field_value(tokens[5], "scale="));
        }
        circuit.push(std::move(op));
    }
    return circuit;
}

} // namespace qnlp
