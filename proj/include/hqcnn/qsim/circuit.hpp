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
 * Declarative circuits and their exact evaluation.
 *
 * A circuit is an ordered list of GateOps. Each gate draws its angles from
 * one of three parameter pools (trainable, encoding, fixed) through slot
 * indices, so one template can be evaluated for any window of pixels and any
 * set of trainable weights without being rebuilt.
 */
#pragma once

#include "hqcnn/qsim/state_vector.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hqcnn::qsim {

enum class GateKind { RX, RY, RZ, H, CRX, CRZ, CROT, CPHASE };
enum class SlotKind { Trainable, Encoding, Fixed };

/// Number of angles the gate consumes.
std::size_t arity(GateKind kind);
/// Number of wires the gate acts on.
std::size_t wire_count(GateKind kind);

std::string_view to_string(GateKind kind);
std::string_view to_string(SlotKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);
std::optional<SlotKind> parse_slot_kind(std::string_view name);

struct GateOp {
    GateKind kind;
    /// One wire for single-qubit gates, [control, target] otherwise.
    std::vector<std::size_t> wires;
    /// Indices into the pool selected by slot_kind; length == arity(kind).
    std::vector<std::size_t> param_slots;
    SlotKind slot_kind = SlotKind::Fixed;

    bool operator==(const GateOp &) const = default;
};

struct CircuitTemplate {
    std::string name;
    std::size_t n_qubits = 0;
    std::vector<GateOp> gates;
    std::size_t n_trainable = 0;
    std::size_t n_encoding = 0;
    std::size_t readout_wire = 0;
    /// Values for SlotKind::Fixed slots.
    std::vector<double> fixed_values;

    bool operator==(const CircuitTemplate &) const = default;
};

/// Throws std::invalid_argument / std::out_of_range on malformed gates or
/// slot indices outside the template's declared pools.
void validate(const CircuitTemplate &tmpl);

/// Applies `gate` with resolved angles `values` and returns the new state.
StateVector apply_gate(StateVector state, const GateOp &gate,
                       std::span<const double> values);

/// In-place variant used by the evaluation loops.
void apply_gate_inplace(StateVector &state, const GateOp &gate,
                        std::span<const double> values, bool adjoint = false);

/// Full 2x2 (top-left block) or 4x4 matrix of the gate.
Matrix4c gate_matrix(GateKind kind, std::span<const double> values);

StateVector run_circuit(const CircuitTemplate &tmpl,
                        std::span<const double> trainable,
                        std::span<const double> encodings);

struct ValueAndGradient {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

/**
 * @brief d<Z_wire>/d(trainable) by adjoint-state differentiation.
 *
 * One forward sweep builds |psi>, then a single backward sweep carries
 * both |psi_k> (uncomputed gate by gate) and <lambda| = <psi| Z U_N...U_{k+1}
 * so that every trainable slot gets 2 Re <lambda| dU_k/dp |psi_{k-1}>.
 * Slots shared by several gates accumulate.
 */
ValueAndGradient value_and_gradient(const CircuitTemplate &tmpl,
                                    std::span<const double> trainable,
                                    std::span<const double> encodings,
                                    std::size_t wire);

Eigen::VectorXd gradient(const CircuitTemplate &tmpl,
                         std::span<const double> trainable,
                         std::span<const double> encodings, std::size_t wire);

} // namespace hqcnn::qsim
