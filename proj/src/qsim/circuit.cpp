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
#include "hqcnn/qsim/circuit.hpp"

#include <algorithm>

#include <array>
#include <stdexcept>

namespace hqcnn::qsim {

namespace g = gates;

std::size_t arity(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return 0;
    case GateKind::CROT:
        return 3;
    default:
        return 1;
    }
}

std::size_t wire_count(GateKind kind) {
    switch (kind) {
    case GateKind::CRX:
    case GateKind::CRZ:
    case GateKind::CROT:
    case GateKind::CPHASE:
        return 2;
    default:
        return 1;
    }
}

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::CRX: return "CRX";
    case GateKind::CRZ: return "CRZ";
    case GateKind::CROT: return "CROT";
    case GateKind::CPHASE: return "CPHASE";
    }
    return "?";
}

std::string_view to_string(SlotKind kind) {
    switch (kind) {
    case SlotKind::Trainable: return "train";
    case SlotKind::Encoding: return "enc";
    case SlotKind::Fixed: return "fixed";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (auto k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H,
                   GateKind::CRX, GateKind::CRZ, GateKind::CROT,
                   GateKind::CPHASE}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::optional<SlotKind> parse_slot_kind(std::string_view name) {
    for (auto k : {SlotKind::Trainable, SlotKind::Encoding, SlotKind::Fixed}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

namespace {

void validateGate(const GateOp &gate, std::size_t n_qubits) {
    if (gate.wires.size() != wire_count(gate.kind)) {
        throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                    ": wrong number of wires");
    }
    for (auto w : gate.wires) {
        if (w >= n_qubits) {
            throw std::out_of_range(std::string(to_string(gate.kind)) +
                                    ": wire " + std::to_string(w) +
                                    " out of range");
        }
    }
    if (gate.wires.size() == 2 && gate.wires[0] == gate.wires[1]) {
        throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                    ": control equals target");
    }
    if (gate.param_slots.size() != arity(gate.kind)) {
        throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                    ": arity mismatch");
    }
}

void checkValues(const GateOp &gate, std::span<const double> values) {
    if (values.size() != arity(gate.kind)) {
        throw std::invalid_argument(std::string(to_string(gate.kind)) +
                                    ": expected " +
                                    std::to_string(arity(gate.kind)) +
                                    " angle(s), got " +
                                    std::to_string(values.size()));
    }
}

struct Pools {
    std::span<const double> trainable;
    std::span<const double> encoding;
    std::span<const double> fixed;

    std::span<const double> of(SlotKind kind) const {
        switch (kind) {
        case SlotKind::Trainable: return trainable;
        case SlotKind::Encoding: return encoding;
        case SlotKind::Fixed: return fixed;
        }
        return {};
    }
};

struct Resolved {
    std::array<double, 3> v{};
    std::size_t n = 0;
    std::span<const double> span() const { return {v.data(), n}; }
};

Resolved resolve(const GateOp &gate, const Pools &pools) {
    Resolved r;
    const auto pool = pools.of(gate.slot_kind);
    r.n = gate.param_slots.size();
    for (std::size_t k = 0; k < r.n; ++k) {
        r.v[k] = pool[gate.param_slots[k]];
    }
    return r;
}

Pools checkedPools(const CircuitTemplate &tmpl,
                   std::span<const double> trainable,
                   std::span<const double> encodings) {
    if (trainable.size() != tmpl.n_trainable) {
        throw std::invalid_argument(
            tmpl.name + ": expected " + std::to_string(tmpl.n_trainable) +
            " trainable values, got " + std::to_string(trainable.size()));
    }
    if (encodings.size() != tmpl.n_encoding) {
        throw std::invalid_argument(
            tmpl.name + ": expected " + std::to_string(tmpl.n_encoding) +
            " encoding values, got " + std::to_string(encodings.size()));
    }
    validate(tmpl);
    return {trainable, encodings, tmpl.fixed_values};
}

Matrix4c derivativeMatrix(GateKind kind, std::span<const double> v,
                          std::size_t which) {
    Matrix4c m = Matrix4c::Zero();
    switch (kind) {
    case GateKind::RX:
        m.topLeftCorner<2, 2>() = g::rx_derivative(v[0]);
        break;
    case GateKind::RY:
        m.topLeftCorner<2, 2>() = g::ry_derivative(v[0]);
        break;
    case GateKind::RZ:
        m.topLeftCorner<2, 2>() = g::rz_derivative(v[0]);
        break;
    case GateKind::CRX:
        m = g::controlled(g::rx_derivative(v[0]), 0.0);
        break;
    case GateKind::CRZ:
        m = g::controlled(g::rz_derivative(v[0]), 0.0);
        break;
    case GateKind::CROT:
        m = g::controlled(
            g::rot_derivative(v[0], v[1], v[2], static_cast<int>(which)), 0.0);
        break;
    case GateKind::CPHASE:
        m = g::cphase_derivative(v[0]);
        break;
    case GateKind::H:
        throw std::logic_error("H has no parameters");
    }
    return m;
}

void applyMatrix(StateVector &state, const GateOp &gate, const Matrix4c &m) {
    if (gate.wires.size() == 1) {
        state.applyMatrix(Matrix2c(m.topLeftCorner<2, 2>()), gate.wires[0]);
    } else {
        state.applyMatrix(m, gate.wires[0], gate.wires[1]);
    }
}

} // namespace

void validate(const CircuitTemplate &tmpl) {
    if (tmpl.n_qubits == 0 || tmpl.n_qubits > kMaxQubits) {
        throw std::invalid_argument(tmpl.name + ": bad qubit count");
    }
    if (tmpl.readout_wire >= tmpl.n_qubits) {
        throw std::out_of_range(tmpl.name + ": readout wire out of range");
    }
    std::vector<bool> used_trainable(tmpl.n_trainable, false);
    std::vector<bool> used_encoding(tmpl.n_encoding, false);
    for (const auto &gate : tmpl.gates) {
        validateGate(gate, tmpl.n_qubits);
        const std::size_t pool_size =
            gate.slot_kind == SlotKind::Trainable  ? tmpl.n_trainable
            : gate.slot_kind == SlotKind::Encoding ? tmpl.n_encoding
                                                   : tmpl.fixed_values.size();
        for (auto s : gate.param_slots) {
            if (s >= pool_size) {
                throw std::out_of_range(tmpl.name + ": " +
                                        std::string(to_string(gate.slot_kind)) +
                                        " slot " + std::to_string(s) +
                                        " out of range");
            }
            if (gate.slot_kind == SlotKind::Trainable) used_trainable[s] = true;
            if (gate.slot_kind == SlotKind::Encoding) used_encoding[s] = true;
        }
    }
    // an unused slot would silently get a zero gradient forever
    auto firstGap = [](const std::vector<bool> &used) {
        return std::find(used.begin(), used.end(), false) - used.begin();
    };
    if (auto k = firstGap(used_trainable); k < std::ssize(used_trainable)) {
        throw std::invalid_argument(tmpl.name + ": trainable slot " +
                                    std::to_string(k) + " is never used");
    }
    if (auto k = firstGap(used_encoding); k < std::ssize(used_encoding)) {
        throw std::invalid_argument(tmpl.name + ": encoding slot " +
                                    std::to_string(k) + " is never used");
    }
}

Matrix4c gate_matrix(GateKind kind, std::span<const double> v) {
    Matrix4c m = Matrix4c::Zero();
    switch (kind) {
    case GateKind::RX:
        m.topLeftCorner<2, 2>() = g::rx(v[0]);
        break;
    case GateKind::RY:
        m.topLeftCorner<2, 2>() = g::ry(v[0]);
        break;
    case GateKind::RZ:
        m.topLeftCorner<2, 2>() = g::rz(v[0]);
        break;
    case GateKind::H:
        m.topLeftCorner<2, 2>() = g::hadamard<double>();
        break;
    case GateKind::CRX:
        m = g::crx(v[0]);
        break;
    case GateKind::CRZ:
        m = g::crz(v[0]);
        break;
    case GateKind::CROT:
        m = g::crot(v[0], v[1], v[2]);
        break;
    case GateKind::CPHASE:
        m = g::cphase(v[0]);
        break;
    }
    return m;
}

void apply_gate_inplace(StateVector &state, const GateOp &gate,
                        std::span<const double> values, bool adjoint) {
    validateGate(gate, state.numQubits());
    checkValues(gate, values);
    const Matrix4c m = gate_matrix(gate.kind, values);
    if (!adjoint) {
        applyMatrix(state, gate, m);
        return;
    }
    if (gate.wires.size() == 1) {
        Matrix2c a = m.topLeftCorner<2, 2>().adjoint();
        state.applyMatrix(a, gate.wires[0]);
    } else {
        state.applyMatrix(Matrix4c(m.adjoint()), gate.wires[0],
                          gate.wires[1]);
    }
}

StateVector apply_gate(StateVector state, const GateOp &gate,
                       std::span<const double> values) {
    apply_gate_inplace(state, gate, values);
    return state;
}

StateVector run_circuit(const CircuitTemplate &tmpl,
                        std::span<const double> trainable,
                        std::span<const double> encodings) {
    const Pools pools = checkedPools(tmpl, trainable, encodings);
    StateVector state(tmpl.n_qubits);
    for (const auto &gate : tmpl.gates) {
        apply_gate_inplace(state, gate, resolve(gate, pools).span());
    }
    return state;
}

ValueAndGradient value_and_gradient(const CircuitTemplate &tmpl,
                                    std::span<const double> trainable,
                                    std::span<const double> encodings,
                                    std::size_t wire) {
    const Pools pools = checkedPools(tmpl, trainable, encodings);
    if (wire >= tmpl.n_qubits) {
        throw std::out_of_range(tmpl.name + ": readout wire out of range");
    }

    StateVector psi(tmpl.n_qubits);
    for (const auto &gate : tmpl.gates) {
        apply_gate_inplace(psi, gate, resolve(gate, pools).span());
    }

    // lambda = Z_wire |psi>
    StateVector lambda = psi;
    {
        const std::size_t mask = std::size_t{1} << psi.bitOf(wire);
        auto &a = lambda.amplitudes();
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (static_cast<std::size_t>(i) & mask) {
                a(i) = -a(i);
            }
        }
    }

    ValueAndGradient out;
    out.value = psi.amplitudes().dot(lambda.amplitudes()).real();
    out.gradient = Eigen::VectorXd::Zero(tmpl.n_trainable);

    for (auto it = tmpl.gates.rbegin(); it != tmpl.gates.rend(); ++it) {
        const GateOp &gate = *it;
        const Resolved vals = resolve(gate, pools);
        apply_gate_inplace(psi, gate, vals.span(), /*adjoint=*/true);
        if (gate.slot_kind == SlotKind::Trainable) {
            for (std::size_t p = 0; p < gate.param_slots.size(); ++p) {
                StateVector mu = psi;
                applyMatrix(mu, gate, derivativeMatrix(gate.kind, vals.span(), p));
                // Eigen's dot() conjugates the left operand.
                out.gradient(static_cast<Eigen::Index>(gate.param_slots[p])) +=
                    2.0 * lambda.amplitudes().dot(mu.amplitudes()).real();
            }
        }
        apply_gate_inplace(lambda, gate, vals.span(), /*adjoint=*/true);
    }
    return out;
}

Eigen::VectorXd gradient(const CircuitTemplate &tmpl,
                         std::span<const double> trainable,
                         std::span<const double> encodings, std::size_t wire) {
    return value_and_gradient(tmpl, trainable, encodings, wire).gradient;
}

} // namespace hqcnn::qsim
