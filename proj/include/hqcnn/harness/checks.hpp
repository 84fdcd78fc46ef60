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
/**
 * @file
 * Numerical self-checks shared by the `gradcheck` / `selftest` commands and
 * the acceptance suite. Each check compares the production path against an
 * independent route (dense unitaries, central finite differences, literal
 * matrix entries).
 */
#pragma once

#include "hqcnn/qsim/dense_oracle.hpp"
#include "hqcnn/rng.hpp"
#include "hqcnn/templates.hpp"

#include <string>
#include <vector>

namespace hqcnn::harness {

inline constexpr double kFiniteDifferenceStep = 1e-4;
inline constexpr double kGradientTolerance = 1e-4;
/// Denominator floor for relative errors of near-zero components.
inline constexpr double kRelativeFloor = 1e-6;
inline constexpr double kOracleTolerance = 1e-10;

/// |a - b| / max(|a|, |b|, floor)
double relative_error(double analytic, double numeric,
                      double floor = kRelativeFloor);

/// Random gate sequence on n qubits with angles in [-2 pi, 2 pi).
std::vector<qsim::BoundGate> random_circuit(Rng &rng, std::size_t n_qubits,
                                            std::size_t depth);

struct OracleReport {
    std::size_t circuits = 0;
    double max_abs_diff = 0.0;
    double max_norm_error = 0.0;
    bool passed = false;
};

/// Random circuits (1..max_qubits, depth 1..max_depth) applied to random
/// states: strided kernels vs dense unitary.
OracleReport oracle_equivalence(std::size_t circuits, std::uint64_t seed,
                                std::size_t max_qubits = 5,
                                std::size_t max_depth = 20);

struct GradcheckReport {
    std::string template_name;
    std::size_t trials = 0;
    double max_relative_error = 0.0;
    /// Worst error seen for each trainable slot.
    std::vector<double> per_parameter;
    bool passed = false;
};

/// Adjoint gradient vs central differences of <Z_readout>, parameters
/// ~U[0, 2 pi), encodings ~U[-pi, pi).
GradcheckReport gradcheck(const qsim::CircuitTemplate &tmpl, std::size_t trials,
                          std::uint64_t seed,
                          double step = kFiniteDifferenceStep,
                          double tolerance = kGradientTolerance);

struct GateFidelityReport {
    double crot_max_diff = 0.0;
    double cphase_max_diff = 0.0;
    double hadamard_max_diff = 0.0;
    double rz_max_diff = 0.0;
    double rx_max_diff = 0.0;
    /// max |U^dagger U - I| over every gate kind and all draws.
    double unitarity_max_diff = 0.0;
    bool passed = false;
};

/// Entrywise comparison against matrices typed out from their closed forms.
GateFidelityReport gate_fidelity(std::size_t draws, std::uint64_t seed);

struct CheckLine {
    std::string name;
    bool passed;
    std::string detail;
};

/// Every self-check with its default size; used by `selftest`.
std::vector<CheckLine> run_selftest(std::size_t gradient_trials, std::uint64_t seed);

} // namespace hqcnn::harness
