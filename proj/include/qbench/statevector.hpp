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
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/rng.hpp"

namespace qbench {

using cplx = std::complex<double>;

using Mat2 = std::array<cplx, 4>;   // row-major 2x2
using Mat4 = std::array<cplx, 16>;  // row-major 4x4

/// Matrix of a unitary gate kind. Two-qubit matrices are indexed with the
/// instruction's first qubit as the high bit: index = (b_first << 1) | b_second.
inline Mat2 gate_matrix_1q(GateKind k, double angle) {
    const double s = 1.0 / std::sqrt(2.0);
    const double c2 = std::cos(angle / 2.0), s2 = std::sin(angle / 2.0);
    switch (k) {
        case GateKind::H: return {cplx(s), cplx(s), cplx(s), cplx(-s)};
        case GateKind::X: return {cplx(0), cplx(1), cplx(1), cplx(0)};
        case GateKind::SX:
            return {cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5)};
        case GateKind::RX: return {cplx(c2), cplx(0, -s2), cplx(0, -s2), cplx(c2)};
        case GateKind::RY: return {cplx(c2), cplx(-s2), cplx(s2), cplx(c2)};
        case GateKind::RZ:
            return {std::polar(1.0, -angle / 2.0), cplx(0), cplx(0),
                    std::polar(1.0, angle / 2.0)};
        default: throw std::invalid_argument("not a one-qubit unitary kind");
    }
}

/// Dense statevector over n qubits; qubit 0 is the least significant bit of
/// the basis index. Single-owner mutable: gates update amplitudes in place.
class StateVector {
public:
    explicit StateVector(uint32_t n) : n_(n), amps_(size_t(1) << n, cplx(0)) {
        if (n > 30) throw std::invalid_argument("statevector width > 30 qubits");
        amps_[0] = cplx(1);
    }

    static StateVector basis_state(uint32_t n, uint64_t index) {
        StateVector sv(n);
        sv.amps_[0] = cplx(0);
        sv.amps_[index] = cplx(1);
        return sv;
    }

    uint32_t num_qubits() const { return n_; }
    size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    void apply_1q(uint32_t q, const Mat2& m) {
        check_qubit(q);
        const size_t mask = size_t(1) << q;
        for (size_t base = 0; base < amps_.size(); base += 2 * mask) {
            for (size_t i = base; i < base + mask; ++i) {
                const cplx a0 = amps_[i];
                const cplx a1 = amps_[i + mask];
                amps_[i] = m[0] * a0 + m[1] * a1;
                amps_[i + mask] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    /// Diagonal phase on one qubit: amp *= (q bit ? p1 : p0).
    void apply_phase_1q(uint32_t q, cplx p0, cplx p1) {
        check_qubit(q);
        const size_t mask = size_t(1) << q;
        for (size_t base = 0; base < amps_.size(); base += 2 * mask) {
            for (size_t i = base; i < base + mask; ++i) {
                amps_[i] *= p0;
                amps_[i + mask] *= p1;
            }
        }
    }

    void apply_cx(uint32_t control, uint32_t target) {
        check_qubit(control);
        check_qubit(target);
        const size_t cm = size_t(1) << control, tm = size_t(1) << target;
        for (size_t i = 0; i < amps_.size(); ++i)
            if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
    }

    void apply_cz(uint32_t a, uint32_t b) {
        check_qubit(a);
        check_qubit(b);
        const size_t am = size_t(1) << a, bm = size_t(1) << b;
        for (size_t i = 0; i < amps_.size(); ++i)
            if ((i & am) && (i & bm)) amps_[i] = -amps_[i];
    }

    void apply_cp(uint32_t a, uint32_t b, double lambda) {
        check_qubit(a);
        check_qubit(b);
        const cplx ph = std::polar(1.0, lambda);
        const size_t am = size_t(1) << a, bm = size_t(1) << b;
        for (size_t i = 0; i < amps_.size(); ++i)
            if ((i & am) && (i & bm)) amps_[i] *= ph;
    }

    void apply_swap(uint32_t a, uint32_t b) {
        check_qubit(a);
        check_qubit(b);
        const size_t am = size_t(1) << a, bm = size_t(1) << b;
        for (size_t i = 0; i < amps_.size(); ++i)
            if ((i & am) && !(i & bm)) std::swap(amps_[i], amps_[(i & ~am) | bm]);
    }

    /// Generic two-qubit unitary; m is indexed with q_hi as the high bit.
    void apply_2q(uint32_t q_hi, uint32_t q_lo, const Mat4& m) {
        check_qubit(q_hi);
        check_qubit(q_lo);
        if (q_hi == q_lo) throw std::invalid_argument("duplicate qubit");
        const size_t hm = size_t(1) << q_hi, lm = size_t(1) << q_lo;
        for (size_t i = 0; i < amps_.size(); ++i) {
            if ((i & hm) || (i & lm)) continue;
            const size_t i00 = i, i01 = i | lm, i10 = i | hm, i11 = i | hm | lm;
            const cplx a00 = amps_[i00], a01 = amps_[i01];
            const cplx a10 = amps_[i10], a11 = amps_[i11];
            amps_[i00] = m[0] * a00 + m[1] * a01 + m[2] * a10 + m[3] * a11;
            amps_[i01] = m[4] * a00 + m[5] * a01 + m[6] * a10 + m[7] * a11;
            amps_[i10] = m[8] * a00 + m[9] * a01 + m[10] * a10 + m[11] * a11;
            amps_[i11] = m[12] * a00 + m[13] * a01 + m[14] * a10 + m[15] * a11;
        }
    }

    /// Applies any unitary instruction (condition handling is the caller's job).
    void apply_unitary(const Instruction& ins) {
        switch (ins.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::SX:
            case GateKind::RX:
            case GateKind::RY:
                apply_1q(ins.qubits[0], gate_matrix_1q(ins.kind, ins.angle));
                break;
            case GateKind::RZ:
                apply_phase_1q(ins.qubits[0], std::polar(1.0, -ins.angle / 2.0),
                               std::polar(1.0, ins.angle / 2.0));
                break;
            case GateKind::CX: apply_cx(ins.qubits[0], ins.qubits[1]); break;
            case GateKind::CZ: apply_cz(ins.qubits[0], ins.qubits[1]); break;
            case GateKind::CP:
                apply_cp(ins.qubits[0], ins.qubits[1], ins.angle);
                break;
            case GateKind::Swap: apply_swap(ins.qubits[0], ins.qubits[1]); break;
            default: throw std::invalid_argument("not a unitary instruction");
        }
    }

    double prob_one(uint32_t q) const {
        check_qubit(q);
        const size_t mask = size_t(1) << q;
        double p = 0.0;
        for (size_t i = 0; i < amps_.size(); ++i)
            if (i & mask) p += std::norm(amps_[i]);
        return p;
    }

    /// Projects qubit q onto |bit> and renormalizes. branch_prob must be the
    /// probability of that branch. Throws on numerical collapse.
    void project(uint32_t q, int bit, double branch_prob) {
        if (branch_prob < 1e-12)
            throw std::runtime_error("numerical collapse: branch probability ~ 0");
        const size_t mask = size_t(1) << q;
        const double scale = 1.0 / std::sqrt(branch_prob);
        for (size_t i = 0; i < amps_.size(); ++i) {
            const bool is_one = (i & mask) != 0;
            if (is_one == (bit == 1))
                amps_[i] *= scale;
            else
                amps_[i] = cplx(0);
        }
    }

    /// Projective measurement of one qubit; returns the sampled bit.
    int measure(uint32_t q, RandomStream& rng) {
        const double p1 = prob_one(q);
        const int bit = rng.uniform() < p1 ? 1 : 0;
        project(q, bit, bit ? p1 : 1.0 - p1);
        return bit;
    }

    /// Measure-and-flip reset: leaves qubit q in |0>.
    void reset(uint32_t q, RandomStream& rng) {
        if (measure(q, rng) == 1) apply_1q(q, gate_matrix_1q(GateKind::X, 0.0));
    }

    double probability(uint64_t basis_index) const {
        return std::norm(amps_[basis_index]);
    }

private:
    void check_qubit(uint32_t q) const {
        if (q >= n_) throw std::out_of_range("qubit index out of range");
    }

    uint32_t n_;
    std::vector<cplx> amps_;
};

} // namespace qbench
