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

#include "hqcnn/qsim/gates.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace hqcnn::qsim {

using Complex = std::complex<double>;
using Matrix2c = gates::Matrix2c<double>;
using Matrix4c = gates::Matrix4c<double>;

inline constexpr std::size_t kMaxQubits = 8;

/**
 * @brief Dense amplitude vector for up to kMaxQubits qubits.
 *
 * Wire 0 is the most significant bit of the basis-state index: for n qubits
 * wire w maps to bit (n - 1 - w).
 */
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

    [[nodiscard]] std::size_t numQubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const { return amps_; }
    [[nodiscard]] Eigen::VectorXcd &amplitudes() { return amps_; }
    [[nodiscard]] double norm() const { return amps_.norm(); }

    /// Applies a 2x2 matrix to `wire` in place. The matrix need not be
    /// unitary (derivative matrices go through the same kernel).
    void applyMatrix(const Matrix2c &m, std::size_t wire);

    /// Applies a 4x4 matrix written in the |control, target> basis.
    void applyMatrix(const Matrix4c &m, std::size_t control,
                     std::size_t target);

    [[nodiscard]] std::size_t bitOf(std::size_t wire) const {
        return n_qubits_ - 1 - wire;
    }

  private:
    std::size_t n_qubits_;
    Eigen::VectorXcd amps_;
};

/// Probability-weighted Pauli-Z on `wire`.
double expectation_z(const StateVector &state, std::size_t wire);

} // namespace hqcnn::qsim
