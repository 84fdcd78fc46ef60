// Copyright 2026 The hqcnn Authors
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
#include "hqcnn/qsim/dense_oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

namespace hqcnn::qsim {

namespace {

/// |row><col| on a single qubit.
Eigen::Matrix2cd outer(int row, int col) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(row, col) = 1.0;
    return m;
}

/// Kronecker product over wires 0..n-1 (wire 0 leftmost, i.e. the MSB).
Eigen::MatrixXcd kronChain(const std::vector<Eigen::Matrix2cd> &factors) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (const auto &f : factors) {
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(acc, f).eval();
        acc = std::move(next);
    }
    return acc;
}

Eigen::MatrixXcd embed(const BoundGate &g, std::size_t n) {
    const Matrix4c m = gate_matrix(g.op.kind, g.values);
    std::vector<Eigen::Matrix2cd> factors(n, Eigen::Matrix2cd::Identity());
    if (g.op.wires.size() == 1) {
        factors[g.op.wires[0]] = m.topLeftCorner<2, 2>();
        return kronChain(factors);
    }
    const std::size_t c = g.op.wires[0];
    const std::size_t t = g.op.wires[1];
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < 4; ++r) {
        for (int k = 0; k < 4; ++k) {
            if (m(r, k) == Complex{0.0, 0.0}) {
                continue;
            }
            factors[c] = outer(r >> 1, k >> 1);
            factors[t] = outer(r & 1, k & 1);
            full += m(r, k) * kronChain(factors);
        }
    }
    return full;
}

} // namespace

Eigen::MatrixXcd dense_unitary_oracle(std::span<const BoundGate> gates,
                                      std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > kMaxOracleQubits) {
        throw std::invalid_argument("dense oracle supports 1..5 qubits");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &g : gates) {
        for (auto w : g.op.wires) {
            if (w >= n_qubits) {
                throw std::out_of_range("oracle: wire out of range");
            }
        }
        u = (embed(g, n_qubits) * u).eval();
    }
    return u;
}

} // namespace hqcnn::qsim
