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
#include "hqcnn/qsim/state_vector.hpp"

#include <stdexcept>
#include <string>

namespace hqcnn::qsim {

namespace {
void checkQubitCount(std::size_t n) {
    if (n == 0 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n));
    }
}

void checkWire(std::size_t wire, std::size_t n) {
    if (wire >= n) {
        throw std::out_of_range("wire " + std::to_string(wire) +
                                " out of range for " + std::to_string(n) +
                                " qubits");
    }
}
} // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits) {
    checkQubitCount(n_qubits);
    amps_ = Eigen::VectorXcd::Zero(std::size_t{1} << n_qubits);
    amps_(0) = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    checkQubitCount(n_qubits);
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
}

void StateVector::applyMatrix(const Matrix2c &m, std::size_t wire) {
    checkWire(wire, n_qubits_);
    const std::size_t stride = std::size_t{1} << bitOf(wire);
    const std::size_t dim = size();
    Complex *a = amps_.data();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = a[i];
            const Complex a1 = a[i + stride];
            a[i] = m(0, 0) * a0 + m(0, 1) * a1;
            a[i + stride] = m(1, 0) * a0 + m(1, 1) * a1;
        }
    }
}

void StateVector::applyMatrix(const Matrix4c &m, std::size_t control,
                              std::size_t target) {
    checkWire(control, n_qubits_);
    checkWire(target, n_qubits_);
    if (control == target) {
        throw std::invalid_argument("control and target wires must differ");
    }
    const std::size_t sc = std::size_t{1} << bitOf(control);
    const std::size_t st = std::size_t{1} << bitOf(target);
    const std::size_t dim = size();
    Complex *a = amps_.data();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & sc) != 0 || (i & st) != 0) {
            continue;
        }
        const std::size_t idx[4] = {i, i | st, i | sc, i | sc | st};
        const Complex v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            a[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] +
                        m(r, 3) * v[3];
        }
    }
}

double expectation_z(const StateVector &state, std::size_t wire) {
    checkWire(wire, state.numQubits());
    const std::size_t mask = std::size_t{1} << state.bitOf(wire);
    const auto &a = state.amplitudes();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double p = std::norm(a(i));
        acc += (static_cast<std::size_t>(i) & mask) ? -p : p;
    }
    return acc;
}

} // namespace hqcnn::qsim
