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
#pragma once

#include "hqcnn/qsim/circuit.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace hqcnn::qsim {

/// A gate with its angles already bound.
struct BoundGate {
    GateOp op;
    std::vector<double> values;
};

inline constexpr std::size_t kMaxOracleQubits = 5;

/**
 * @brief Full circuit unitary built from explicit Kronecker products.
 *
 * Test oracle for the state-vector kernels. A two-qubit matrix M on
 * (control, target) is expanded as sum_{ab,cd} M_(ab),(cd) |a><c| (x) |b><d|
 * with identities on every other wire, so it shares nothing with the
 * strided update loops except the gate matrices themselves.
 */
Eigen::MatrixXcd dense_unitary_oracle(std::span<const BoundGate> gates,
                                      std::size_t n_qubits);

} // namespace hqcnn::qsim
