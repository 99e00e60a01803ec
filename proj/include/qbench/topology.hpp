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

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace qbench {

/// Rectangular grid of qubit sites with nearest-neighbor coupling.
/// Node ids are row-major: node = row * cols + col.
struct GridTopology {
    uint32_t rows = 0;
    uint32_t cols = 0;

    GridTopology() = default;
    GridTopology(uint32_t r, uint32_t c) : rows(r), cols(c) {
        if (r == 0 || c == 0) throw std::invalid_argument("empty grid");
    }

    uint32_t node_count() const { return rows * cols; }
    uint32_t node(uint32_t r, uint32_t c) const { return r * cols + c; }
    uint32_t row_of(uint32_t n) const { return n / cols; }
    uint32_t col_of(uint32_t n) const { return n % cols; }

    bool adjacent(uint32_t a, uint32_t b) const {
        int dr = static_cast<int>(row_of(a)) - static_cast<int>(row_of(b));
        int dc = static_cast<int>(col_of(a)) - static_cast<int>(col_of(b));
        return std::abs(dr) + std::abs(dc) == 1;
    }

    uint32_t distance(uint32_t a, uint32_t b) const {
        int dr = static_cast<int>(row_of(a)) - static_cast<int>(row_of(b));
        int dc = static_cast<int>(col_of(a)) - static_cast<int>(col_of(b));
        return static_cast<uint32_t>(std::abs(dr) + std::abs(dc));
    }

    std::vector<uint32_t> neighbors(uint32_t n) const {
        std::vector<uint32_t> out;
        uint32_t r = row_of(n), c = col_of(n);
        if (r > 0) out.push_back(node(r - 1, c));
        if (r + 1 < rows) out.push_back(node(r + 1, c));
        if (c > 0) out.push_back(node(r, c - 1));
        if (c + 1 < cols) out.push_back(node(r, c + 1));
        return out;
    }

    /// Deterministic shortest path from a to b (inclusive): first walk the
    /// column offset, then the row offset. Length = distance(a, b) + 1.
    std::vector<uint32_t> path(uint32_t a, uint32_t b) const {
        std::vector<uint32_t> p{a};
        uint32_t r = row_of(a), c = col_of(a);
        const uint32_t rb = row_of(b), cb = col_of(b);
        while (c != cb) {
            c = c < cb ? c + 1 : c - 1;
            p.push_back(node(r, c));
        }
        while (r != rb) {
            r = r < rb ? r + 1 : r - 1;
            p.push_back(node(r, c));
        }
        return p;
    }
};

/// Row-major linear placement: logical qubit q sits on grid node q.
inline std::vector<uint32_t> linear_placement(const GridTopology& topo,
                                              uint32_t num_qubits) {
    if (num_qubits > topo.node_count())
        throw std::invalid_argument("circuit width exceeds topology nodes");
    std::vector<uint32_t> placement(num_qubits);
    for (uint32_t q = 0; q < num_qubits; ++q) placement[q] = q;
    return placement;
}

} // namespace qbench
