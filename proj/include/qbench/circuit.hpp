// Copyright 2026 The qbench developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qbench {

enum class GateKind : uint8_t {
    H,
    X,
    SX,
    RX,
    RY,
    RZ,
    CX,
    CZ,
    CP,
    Swap,
    Measure,
    Reset,
};

inline bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
           k == GateKind::CP;
}

inline bool is_two_qubit(GateKind k) {
    return k == GateKind::CX || k == GateKind::CZ || k == GateKind::CP ||
           k == GateKind::Swap;
}

inline bool is_unitary(GateKind k) {
    return k != GateKind::Measure && k != GateKind::Reset;
}

/// Kinds that may carry a classical condition: single-qubit gates only,
/// matching the classically controlled single-qubit gates that dynamic
/// circuits feed-forward into.
inline bool is_conditionable(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
           k == GateKind::X || k == GateKind::SX;
}

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::SX: return "sx";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::CP: return "cp";
        case GateKind::Swap: return "swap";
        case GateKind::Measure: return "measure";
        case GateKind::Reset: return "reset";
    }
    return "?";
}

inline GateKind gate_from_name(const std::string& s) {
    static const std::map<std::string, GateKind> table = {
        {"h", GateKind::H},       {"x", GateKind::X},
        {"sx", GateKind::SX},     {"rx", GateKind::RX},
        {"ry", GateKind::RY},     {"rz", GateKind::RZ},
        {"cx", GateKind::CX},     {"cz", GateKind::CZ},
        {"cp", GateKind::CP},     {"swap", GateKind::Swap},
        {"measure", GateKind::Measure}, {"reset", GateKind::Reset},
    };
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown gate kind: " + s);
    return it->second;
}

/// Angles produced by the benchmark generators are dyadic fractions of pi
/// (num * pi / 2^k). Building them all through this helper keeps equal angles
/// bitwise equal, so structural circuit comparisons never drift.
inline double pi_frac(int64_t num, uint32_t pow2) {
    return static_cast<double>(num) * (M_PI / static_cast<double>(1ull << pow2));
}

struct Condition {
    uint32_t bit = 0;
    uint8_t value = 1;  // required bit value, 0 or 1

    bool operator==(const Condition&) const = default;
};

struct Instruction {
    GateKind kind = GateKind::H;
    std::vector<uint32_t> qubits;
    double angle = 0.0;              // rotation kinds only
    int32_t clbit = -1;              // Measure target
    std::optional<Condition> condition;

    bool operator==(const Instruction&) const = default;
};

/// Ordered instruction list over qubits and classical bits. Supports
/// mid-circuit measurement, reset, and classically conditioned gates.
/// Circuits are immutable by convention once handed to an engine; nothing
/// here mutates after construction, so sharing across threads is safe.
struct Circuit {
    std::string name;
    uint32_t num_qubits = 0;
    uint32_t num_clbits = 0;
    std::vector<Instruction> instructions;
    std::map<std::string, std::string> metadata;
    /// Grid node per qubit; set by the transpiler, empty for unplaced circuits.
    std::vector<uint32_t> node_of_qubit;

    Circuit() = default;
    Circuit(std::string name_, uint32_t nq, uint32_t nc)
        : name(std::move(name_)), num_qubits(nq), num_clbits(nc) {}

    Circuit& add(Instruction ins) {
        instructions.push_back(std::move(ins));
        return *this;
    }

    Circuit& h(uint32_t q) { return add({GateKind::H, {q}}); }
    Circuit& x(uint32_t q, std::optional<Condition> c = {}) {
        return add({GateKind::X, {q}, 0.0, -1, c});
    }
    Circuit& sx(uint32_t q, std::optional<Condition> c = {}) {
        return add({GateKind::SX, {q}, 0.0, -1, c});
    }
    Circuit& rx(uint32_t q, double a, std::optional<Condition> c = {}) {
        return add({GateKind::RX, {q}, a, -1, c});
    }
    Circuit& ry(uint32_t q, double a, std::optional<Condition> c = {}) {
        return add({GateKind::RY, {q}, a, -1, c});
    }
    Circuit& rz(uint32_t q, double a, std::optional<Condition> c = {}) {
        return add({GateKind::RZ, {q}, a, -1, c});
    }
    Circuit& cx(uint32_t c, uint32_t t) { return add({GateKind::CX, {c, t}}); }
    Circuit& cz(uint32_t a, uint32_t b) { return add({GateKind::CZ, {a, b}}); }
    Circuit& cp(uint32_t a, uint32_t b, double lam) {
        return add({GateKind::CP, {a, b}, lam});
    }
    Circuit& swap_q(uint32_t a, uint32_t b) { return add({GateKind::Swap, {a, b}}); }
    Circuit& measure(uint32_t q, uint32_t c) {
        return add({GateKind::Measure, {q}, 0.0, static_cast<int32_t>(c)});
    }
    Circuit& reset(uint32_t q) { return add({GateKind::Reset, {q}}); }

    size_t count_kind(GateKind k) const {
        return static_cast<size_t>(std::count_if(
            instructions.begin(), instructions.end(),
            [k](const Instruction& i) { return i.kind == k; }));
    }
    size_t count_two_qubit() const {
        return static_cast<size_t>(std::count_if(
            instructions.begin(), instructions.end(),
            [](const Instruction& i) { return is_two_qubit(i.kind); }));
    }
    bool has_mid_circuit_ops() const {
        // A measure followed by any later non-measure instruction, or a reset,
        // or a condition anywhere makes the circuit dynamic.
        bool measured = false;
        for (const auto& ins : instructions) {
            if (ins.kind == GateKind::Reset) return true;
            if (ins.condition) return true;
            if (ins.kind == GateKind::Measure) {
                measured = true;
            } else if (measured) {
                return true;
            }
        }
        return false;
    }
};

struct Violation {
    size_t instruction_index;
    std::string code;
    std::string detail;
};

/// Checks every structural invariant; violations are data, not failures.
/// Codes: qubit-out-of-range, duplicate-qubit, clbit-out-of-range,
/// condition-on-nonconditionable, condition-before-write,
/// rewrite-before-use, reuse-without-reset, missing-clbit, bad-angle.
inline std::vector<Violation> validate(const Circuit& c) {
    std::vector<Violation> out;
    std::vector<int> writes(c.num_clbits, 0);      // measure count per clbit
    std::vector<bool> bit_used(c.num_clbits, false);
    std::vector<bool> measured(c.num_qubits, false);

    for (size_t i = 0; i < c.instructions.size(); ++i) {
        const Instruction& ins = c.instructions[i];
        bool indexable = true;
        for (uint32_t q : ins.qubits) {
            if (q >= c.num_qubits) {
                out.push_back({i, "qubit-out-of-range", gate_name(ins.kind)});
                indexable = false;
            }
        }
        if (ins.qubits.size() == 2 && ins.qubits[0] == ins.qubits[1])
            out.push_back({i, "duplicate-qubit", gate_name(ins.kind)});
        size_t expected_arity = is_two_qubit(ins.kind) ? 2 : 1;
        if (ins.qubits.size() != expected_arity)
            out.push_back({i, "bad-arity", gate_name(ins.kind)});
        if (is_rotation(ins.kind) && !std::isfinite(ins.angle))
            out.push_back({i, "bad-angle", gate_name(ins.kind)});

        if (ins.condition) {
            if (!is_conditionable(ins.kind))
                out.push_back({i, "condition-on-nonconditionable", gate_name(ins.kind)});
            uint32_t b = ins.condition->bit;
            if (b >= c.num_clbits) {
                out.push_back({i, "clbit-out-of-range", "condition"});
            } else {
                if (writes[b] == 0)
                    out.push_back({i, "condition-before-write", "c" + std::to_string(b)});
                else if (writes[b] > 1)
                    out.push_back({i, "rewrite-before-use", "c" + std::to_string(b)});
                bit_used[b] = true;
            }
        }
        if (ins.kind == GateKind::Measure) {
            if (ins.clbit < 0 || static_cast<uint32_t>(ins.clbit) >= c.num_clbits)
                out.push_back({i, "clbit-out-of-range", "measure"});
            else
                writes[static_cast<uint32_t>(ins.clbit)] += 1;
        }

        if (!indexable) continue;
        for (uint32_t q : ins.qubits) {
            if (measured[q] && ins.kind != GateKind::Reset)
                out.push_back({i, "reuse-without-reset", "q" + std::to_string(q)});
        }
        if (ins.kind == GateKind::Measure)
            measured[ins.qubits[0]] = true;
        else if (ins.kind == GateKind::Reset)
            measured[ins.qubits[0]] = false;
    }
    return out;
}

inline bool is_valid(const Circuit& c) { return validate(c).empty(); }

/// Longest dependency-chain length. Every instruction occupies one layer on
/// each qubit it touches; a conditioned gate additionally depends on the
/// measure that produced its condition bit.
inline int algorithmic_depth(const Circuit& c) {
    std::vector<int> qubit_layer(c.num_qubits, 0);
    std::vector<int> clbit_layer(c.num_clbits, 0);
    int depth = 0;
    for (const auto& ins : c.instructions) {
        int start = 0;
        for (uint32_t q : ins.qubits) start = std::max(start, qubit_layer[q]);
        if (ins.condition && ins.condition->bit < c.num_clbits)
            start = std::max(start, clbit_layer[ins.condition->bit]);
        int layer = start + 1;
        for (uint32_t q : ins.qubits) qubit_layer[q] = layer;
        if (ins.kind == GateKind::Measure && ins.clbit >= 0 &&
            static_cast<uint32_t>(ins.clbit) < c.num_clbits)
            clbit_layer[static_cast<uint32_t>(ins.clbit)] = layer;
        depth = std::max(depth, layer);
    }
    return depth;
}

// --- JSON interchange format -------------------------------------------------
//
// {"name": .., "num_qubits": n, "num_clbits": m, "metadata": {..},
//  "instructions": [{"kind": "h", "qubits": [0]},
//                   {"kind": "rz", "qubits": [1], "angle": 1.5707963267948966},
//                   {"kind": "measure", "qubits": [0], "clbit": 0},
//                   {"kind": "rz", "qubits": [2], "angle": -0.78,
//                    "condition": {"bit": 0, "value": 1}}]}

inline nlohmann::json to_json(const Circuit& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["num_qubits"] = c.num_qubits;
    j["num_clbits"] = c.num_clbits;
    j["metadata"] = c.metadata;
    if (!c.node_of_qubit.empty()) j["node_of_qubit"] = c.node_of_qubit;
    nlohmann::json ins_arr = nlohmann::json::array();
    for (const auto& ins : c.instructions) {
        nlohmann::json ji;
        ji["kind"] = gate_name(ins.kind);
        ji["qubits"] = ins.qubits;
        if (is_rotation(ins.kind)) ji["angle"] = ins.angle;
        if (ins.kind == GateKind::Measure) ji["clbit"] = ins.clbit;
        if (ins.condition)
            ji["condition"] = {{"bit", ins.condition->bit},
                               {"value", ins.condition->value}};
        ins_arr.push_back(std::move(ji));
    }
    j["instructions"] = std::move(ins_arr);
    return j;
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c(j.at("name").get<std::string>(), j.at("num_qubits").get<uint32_t>(),
              j.at("num_clbits").get<uint32_t>());
    if (j.contains("metadata"))
        c.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    if (j.contains("node_of_qubit"))
        c.node_of_qubit = j.at("node_of_qubit").get<std::vector<uint32_t>>();
    for (const auto& ji : j.at("instructions")) {
        Instruction ins;
        ins.kind = gate_from_name(ji.at("kind").get<std::string>());
        ins.qubits = ji.at("qubits").get<std::vector<uint32_t>>();
        if (ji.contains("angle")) ins.angle = ji.at("angle").get<double>();
        if (ji.contains("clbit")) ins.clbit = ji.at("clbit").get<int32_t>();
        if (ji.contains("condition"))
            ins.condition = Condition{ji.at("condition").at("bit").get<uint32_t>(),
                                      ji.at("condition").at("value").get<uint8_t>()};
        c.instructions.push_back(std::move(ins));
    }
    return c;
}

} // namespace qbench
