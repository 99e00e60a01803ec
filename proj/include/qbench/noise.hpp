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

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbench/circuit.hpp"
#include "qbench/rng.hpp"
#include "qbench/statevector.hpp"
#include "qbench/topology.hpp"

namespace qbench {

// --- small dense complex matrices ---------------------------------------------

template <size_t N>
using MatN = std::array<cplx, N * N>;

template <size_t N>
MatN<N> mat_identity() {
    MatN<N> m{};
    for (size_t i = 0; i < N; ++i) m[i * N + i] = cplx(1);
    return m;
}

template <size_t N>
MatN<N> mat_mul(const MatN<N>& a, const MatN<N>& b) {
    MatN<N> c{};
    for (size_t i = 0; i < N; ++i)
        for (size_t k = 0; k < N; ++k) {
            const cplx aik = a[i * N + k];
            if (aik == cplx(0)) continue;
            for (size_t j = 0; j < N; ++j) c[i * N + j] += aik * b[k * N + j];
        }
    return c;
}

/// exp(A) by scaling-and-squaring with a truncated Taylor series. Intended
/// for the small skew-Hermitian generators of this module; the result of
/// exp(-iH) is unitary to ~1e-14.
template <size_t N>
MatN<N> mat_exp(const MatN<N>& a) {
    double norm = 0.0;
    for (size_t i = 0; i < N; ++i) {
        double row = 0.0;
        for (size_t j = 0; j < N; ++j) row += std::abs(a[i * N + j]);
        norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++s;
    }
    MatN<N> scaled = a;
    const double inv = std::ldexp(1.0, -s);
    for (cplx& v : scaled) v *= inv;

    MatN<N> result = mat_identity<N>();
    MatN<N> term = mat_identity<N>();
    for (int k = 1; k <= 18; ++k) {
        term = mat_mul(term, scaled);
        for (cplx& v : term) v /= static_cast<double>(k);
        for (size_t i = 0; i < N * N; ++i) result[i] += term[i];
    }
    for (int k = 0; k < s; ++k) result = mat_mul(result, result);
    return result;
}

// --- Pauli strings -------------------------------------------------------------

/// Non-identity Pauli on 1 or 2 qubit slots. Labels: 0=I, 1=X, 2=Y, 3=Z.
/// Slot 0 is the gate's first qubit (the control for CX).
struct PauliString {
    std::array<uint8_t, 2> labels{0, 0};
    uint8_t width = 1;

    std::string name() const {
        static const char* sym = "IXYZ";
        std::string s;
        for (uint8_t i = 0; i < width; ++i) s.push_back(sym[labels[i]]);
        return s;
    }
    bool operator==(const PauliString&) const = default;
};

/// The 3 single-qubit non-identity Paulis, in X, Y, Z order.
inline std::vector<PauliString> pauli_basis_1q() {
    std::vector<PauliString> out;
    for (uint8_t l = 1; l <= 3; ++l) out.push_back({{l, 0}, 1});
    return out;
}

/// The 15 two-qubit non-identity Paulis, lexicographic in (slot0, slot1).
inline std::vector<PauliString> pauli_basis_2q() {
    std::vector<PauliString> out;
    for (uint8_t a = 0; a <= 3; ++a)
        for (uint8_t b = 0; b <= 3; ++b) {
            if (a == 0 && b == 0) continue;
            out.push_back({{a, b}, 2});
        }
    return out;
}

inline Mat2 pauli_matrix(uint8_t label) {
    switch (label) {
        case 0: return {cplx(1), cplx(0), cplx(0), cplx(1)};
        case 1: return {cplx(0), cplx(1), cplx(1), cplx(0)};
        case 2: return {cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)};
        case 3: return {cplx(1), cplx(0), cplx(0), cplx(-1)};
    }
    throw std::invalid_argument("bad pauli label");
}

/// Kron(slot0, slot1): slot0 supplies the high bit of the 4x4 index.
inline Mat4 pauli_matrix_2q(const PauliString& p) {
    const Mat2 a = pauli_matrix(p.labels[0]);
    const Mat2 b = pauli_matrix(p.labels[1]);
    Mat4 m{};
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j)
            for (size_t k = 0; k < 2; ++k)
                for (size_t l = 0; l < 2; ++l)
                    m[(i * 2 + k) * 4 + (j * 2 + l)] = a[i * 2 + j] * b[k * 2 + l];
    return m;
}

// --- error generators ----------------------------------------------------------

struct PauliTerm {
    PauliString pauli;
    double rate = 0.0;
};

/// Post-gate error generator: coherent Hamiltonian rates h_P and stochastic
/// Pauli rates s_P over the non-identity Paulis of the gate's width.
struct ErrorGenerator {
    std::vector<PauliTerm> hamiltonian;  // h_P, any sign
    std::vector<PauliTerm> stochastic;   // s_P >= 0
    uint8_t width = 1;

    double stochastic_total() const {
        double t = 0.0;
        for (const auto& term : stochastic) t += term.rate;
        return t;
    }
};

struct CrosstalkSpec {
    bool enabled = false;
    double h_zz = 0.0;
    GridTopology topology;
};

/// Sampling parameters for a model instance.
struct NoiseSpec {
    double sigma_h = 0.0;   // std-dev of Hamiltonian rates
    double s_max = 0.0;     // uniform upper bound of stochastic rates
    double h_zz = 0.0;      // ZZ crosstalk rate
    bool crosstalk_enabled = false;
};

/// A sampled noise model: one frozen generator per noisy gate kind (X, SX,
/// CX; RZ is error-free), plus optional ZZ crosstalk over a grid topology.
/// Immutable after sampling; trajectory workers share it freely.
struct NoiseModel {
    ErrorGenerator gen_x, gen_sx, gen_cx;
    CrosstalkSpec crosstalk;
    uint64_t seed = 0;

    // Derived quantities, precomputed so the trajectory loop stays lean.
    Mat2 coherent_x = mat_identity<2>();
    Mat2 coherent_sx = mat_identity<2>();
    Mat4 coherent_cx = mat_identity<4>();
    std::vector<double> flip_prob_x, flip_prob_sx, flip_prob_cx;

    const ErrorGenerator* generator_for(GateKind k) const {
        switch (k) {
            case GateKind::X: return &gen_x;
            case GateKind::SX: return &gen_sx;
            case GateKind::CX: return &gen_cx;
            default: return nullptr;
        }
    }

    bool is_trivial() const {
        auto zero = [](const ErrorGenerator& g) {
            for (const auto& t : g.hamiltonian)
                if (t.rate != 0.0) return false;
            for (const auto& t : g.stochastic)
                if (t.rate != 0.0) return false;
            return true;
        };
        return zero(gen_x) && zero(gen_sx) && zero(gen_cx) &&
               (!crosstalk.enabled || crosstalk.h_zz == 0.0);
    }
};

/// exp(-i sum_P h_P P) for a single-qubit generator.
inline Mat2 coherent_error_unitary_1q(const ErrorGenerator& gen) {
    Mat2 a{};
    for (const auto& term : gen.hamiltonian) {
        const Mat2 p = pauli_matrix(term.pauli.labels[0]);
        for (size_t i = 0; i < 4; ++i) a[i] += cplx(0, -1) * term.rate * p[i];
    }
    return mat_exp<2>(a);
}

/// exp(-i sum_P h_P P) for a two-qubit generator.
inline Mat4 coherent_error_unitary_2q(const ErrorGenerator& gen) {
    Mat4 a{};
    for (const auto& term : gen.hamiltonian) {
        const Mat4 p = pauli_matrix_2q(term.pauli);
        for (size_t i = 0; i < 16; ++i) a[i] += cplx(0, -1) * term.rate * p[i];
    }
    return mat_exp<4>(a);
}

/// Probability that exp(s S_P) flips P in one trajectory step.
inline double stochastic_flip_probability(double s) {
    return (1.0 - std::exp(-2.0 * s)) / 2.0;
}

namespace detail {
inline void finalize_model(NoiseModel& m) {
    m.coherent_x = coherent_error_unitary_1q(m.gen_x);
    m.coherent_sx = coherent_error_unitary_1q(m.gen_sx);
    m.coherent_cx = coherent_error_unitary_2q(m.gen_cx);
    auto probs = [](const ErrorGenerator& g) {
        std::vector<double> p;
        p.reserve(g.stochastic.size());
        for (const auto& t : g.stochastic) p.push_back(stochastic_flip_probability(t.rate));
        return p;
    };
    m.flip_prob_x = probs(m.gen_x);
    m.flip_prob_sx = probs(m.gen_sx);
    m.flip_prob_cx = probs(m.gen_cx);
}
} // namespace detail

/// Draws one frozen model: h_P ~ Normal(0, sigma_h^2) and s_P ~ U[0, s_max]
/// per non-identity Pauli of each noisy gate kind. Deterministic in the seed.
inline NoiseModel sample_noise_model(const NoiseSpec& spec,
                                     const GridTopology& topology,
                                     uint64_t seed) {
    if (spec.sigma_h < 0 || spec.s_max < 0 || spec.h_zz < 0)
        throw std::invalid_argument("noise rates must be nonnegative");
    NoiseModel model;
    model.seed = seed;
    RandomStream rng = derive_stream(seed, 0x6e6f697365ull);  // noise-model stream

    auto sample_gen = [&](uint8_t width) {
        ErrorGenerator g;
        g.width = width;
        const auto basis = width == 1 ? pauli_basis_1q() : pauli_basis_2q();
        for (const auto& p : basis)
            g.hamiltonian.push_back({p, spec.sigma_h * rng.normal()});
        for (const auto& p : basis)
            g.stochastic.push_back({p, spec.s_max * rng.uniform()});
        if (g.stochastic_total() >= 0.1)
            throw std::invalid_argument("stochastic rates outside small-rate regime");
        return g;
    };
    model.gen_x = sample_gen(1);
    model.gen_sx = sample_gen(1);
    model.gen_cx = sample_gen(2);
    model.crosstalk.enabled = spec.crosstalk_enabled;
    model.crosstalk.h_zz = spec.h_zz;
    model.crosstalk.topology = topology;
    detail::finalize_model(model);
    return model;
}

/// exp(-i theta Z(x)Z) phase: e^{-i theta} on aligned bits, e^{+i theta} otherwise.
inline void apply_zz_rotation(StateVector& state, uint32_t a, uint32_t b,
                              double theta) {
    const cplx same = std::polar(1.0, -theta);
    const cplx diff = std::polar(1.0, theta);
    const size_t am = size_t(1) << a, bm = size_t(1) << b;
    auto& amps = state.amplitudes();
    for (size_t i = 0; i < amps.size(); ++i) {
        const bool ba = (i & am) != 0, bb = (i & bm) != 0;
        amps[i] *= (ba == bb) ? same : diff;
    }
}

inline void apply_pauli(StateVector& state, uint32_t q, uint8_t label) {
    if (label == 0) return;
    state.apply_1q(q, pauli_matrix(label));
}

/// Post-gate error channel of Eq-style G = e^L Gbar semantics: the ideal gate
/// has already been applied; this adds (1) the coherent error unitary, (2) an
/// independent Bernoulli Pauli flip per stochastic term, and (3) for CX with
/// crosstalk, a ZZ rotation between each gate qubit and every spectator qubit
/// placed on an adjacent grid node.
///
/// `node_of_qubit` maps circuit qubit -> grid node; required only when
/// crosstalk is enabled and the instruction is a CX.
inline void apply_post_gate_error(StateVector& state, const Instruction& ins,
                                  const NoiseModel& model,
                                  const std::vector<uint32_t>& node_of_qubit,
                                  RandomStream& rng) {
    const ErrorGenerator* gen = model.generator_for(ins.kind);
    if (gen == nullptr) return;

    if (gen->width == 1) {
        const uint32_t q = ins.qubits[0];
        const Mat2& u = ins.kind == GateKind::X ? model.coherent_x : model.coherent_sx;
        state.apply_1q(q, u);
        const auto& probs =
            ins.kind == GateKind::X ? model.flip_prob_x : model.flip_prob_sx;
        for (size_t i = 0; i < gen->stochastic.size(); ++i)
            if (probs[i] > 0.0 && rng.bernoulli(probs[i]))
                apply_pauli(state, q, gen->stochastic[i].pauli.labels[0]);
        return;
    }

    const uint32_t qc = ins.qubits[0], qt = ins.qubits[1];
    state.apply_2q(qc, qt, model.coherent_cx);
    for (size_t i = 0; i < gen->stochastic.size(); ++i) {
        if (model.flip_prob_cx[i] > 0.0 && rng.bernoulli(model.flip_prob_cx[i])) {
            apply_pauli(state, qc, gen->stochastic[i].pauli.labels[0]);
            apply_pauli(state, qt, gen->stochastic[i].pauli.labels[1]);
        }
    }

    if (model.crosstalk.enabled && model.crosstalk.h_zz != 0.0) {
        if (node_of_qubit.size() < state.num_qubits())
            throw std::runtime_error("crosstalk requires a placed circuit");
        // Reverse map node -> qubit for spectator lookup.
        for (uint32_t gate_side = 0; gate_side < 2; ++gate_side) {
            const uint32_t gq = ins.qubits[gate_side];
            for (uint32_t nb : model.crosstalk.topology.neighbors(node_of_qubit[gq])) {
                for (uint32_t other = 0; other < state.num_qubits(); ++other) {
                    if (other == qc || other == qt) continue;
                    if (node_of_qubit[other] == nb)
                        apply_zz_rotation(state, gq, other, model.crosstalk.h_zz);
                }
            }
        }
    }
}

/// Spectator ZZ couplings a CX at this placement would receive; used by the
/// crosstalk accounting checks.
inline size_t crosstalk_coupling_count(const Instruction& ins,
                                       const NoiseModel& model,
                                       const std::vector<uint32_t>& node_of_qubit,
                                       uint32_t num_qubits) {
    size_t count = 0;
    const uint32_t qc = ins.qubits[0], qt = ins.qubits[1];
    for (uint32_t gate_side = 0; gate_side < 2; ++gate_side) {
        const uint32_t gq = ins.qubits[gate_side];
        for (uint32_t nb : model.crosstalk.topology.neighbors(node_of_qubit[gq]))
            for (uint32_t other = 0; other < num_qubits; ++other)
                if (other != qc && other != qt && node_of_qubit[other] == nb) ++count;
    }
    return count;
}

// --- JSON ----------------------------------------------------------------------

inline nlohmann::json to_json(const NoiseSpec& s) {
    return {{"sigma_h", s.sigma_h},
            {"s_max", s.s_max},
            {"h_zz", s.h_zz},
            {"crosstalk_enabled", s.crosstalk_enabled}};
}

inline NoiseSpec noise_spec_from_json(const nlohmann::json& j) {
    NoiseSpec s;
    s.sigma_h = j.at("sigma_h").get<double>();
    s.s_max = j.at("s_max").get<double>();
    s.h_zz = j.at("h_zz").get<double>();
    s.crosstalk_enabled = j.at("crosstalk_enabled").get<bool>();
    return s;
}

inline nlohmann::json to_json(const ErrorGenerator& g) {
    nlohmann::json jh = nlohmann::json::object(), js = nlohmann::json::object();
    for (const auto& t : g.hamiltonian) jh[t.pauli.name()] = t.rate;
    for (const auto& t : g.stochastic) js[t.pauli.name()] = t.rate;
    return {{"hamiltonian", jh}, {"stochastic", js}, {"width", g.width}};
}

inline nlohmann::json to_json(const NoiseModel& m) {
    return {{"seed", m.seed},
            {"x", to_json(m.gen_x)},
            {"sx", to_json(m.gen_sx)},
            {"cx", to_json(m.gen_cx)},
            {"crosstalk",
             {{"enabled", m.crosstalk.enabled},
              {"h_zz", m.crosstalk.h_zz},
              {"rows", m.crosstalk.topology.rows},
              {"cols", m.crosstalk.topology.cols}}}};
}

} // namespace qbench
