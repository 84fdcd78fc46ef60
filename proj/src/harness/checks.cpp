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
#include "hqcnn/harness/checks.hpp"

#include "hqcnn/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

namespace hqcnn::harness {

using qsim::Complex;
using qsim::GateKind;
using qsim::GateOp;
using qsim::SlotKind;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char *pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

Complex expi(double a) { return std::polar(1.0, a); }

constexpr GateKind kKinds[] = {GateKind::RX,  GateKind::RY,  GateKind::RZ,
                               GateKind::H,   GateKind::CRX, GateKind::CRZ,
                               GateKind::CROT, GateKind::CPHASE};

double expectation(const qsim::CircuitTemplate &tmpl,
                   const std::vector<double> &params,
                   const std::vector<double> &enc) {
    return qsim::expectation_z(qsim::run_circuit(tmpl, params, enc),
                               tmpl.readout_wire);
}

} // namespace

double relative_error(double analytic, double numeric, double floor) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
    return std::abs(analytic - numeric) / denom;
}

std::vector<qsim::BoundGate> random_circuit(Rng &rng, std::size_t n_qubits,
                                            std::size_t depth) {
    std::vector<qsim::BoundGate> gates;
    gates.reserve(depth);
    while (gates.size() < depth) {
        const GateKind kind = kKinds[rng.below(std::size(kKinds))];
        if (qsim::wire_count(kind) > n_qubits) {
            continue;
        }
        GateOp op{kind, {}, {}, SlotKind::Fixed};
        op.wires.push_back(rng.below(n_qubits));
        if (qsim::wire_count(kind) == 2) {
            std::size_t t = rng.below(n_qubits - 1);
            if (t >= op.wires[0]) ++t;
            op.wires.push_back(t);
        }
        std::vector<double> values(qsim::arity(kind));
        for (std::size_t k = 0; k < values.size(); ++k) {
            op.param_slots.push_back(k);
            values[k] = rng.uniform(-2.0 * kPi, 2.0 * kPi);
        }
        gates.push_back({std::move(op), std::move(values)});
    }
    return gates;
}

OracleReport oracle_equivalence(std::size_t circuits, std::uint64_t seed,
                                std::size_t max_qubits, std::size_t max_depth) {
    Rng rng(seed, Stream::Test);
    OracleReport rep;
    rep.circuits = circuits;
    for (std::size_t c = 0; c < circuits; ++c) {
        const std::size_t n = 1 + rng.below(max_qubits);
        const std::size_t depth = 1 + rng.below(max_depth);
        const auto gates = random_circuit(rng, n, depth);

        Eigen::VectorXcd init(std::size_t{1} << n);
        for (auto &a : init) {
            a = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        init.normalize();

        qsim::StateVector state(n, init);
        for (const auto &g : gates) {
            qsim::apply_gate_inplace(state, g.op, g.values);
        }
        const Eigen::VectorXcd expected = qsim::dense_unitary_oracle(gates, n) * init;
        rep.max_abs_diff = std::max(
            rep.max_abs_diff, (state.amplitudes() - expected).cwiseAbs().maxCoeff());
        rep.max_norm_error = std::max(rep.max_norm_error, std::abs(state.norm() - 1.0));
    }
    rep.passed = rep.max_abs_diff < kOracleTolerance && rep.max_norm_error < kOracleTolerance;
    return rep;
}

GradcheckReport gradcheck(const qsim::CircuitTemplate &tmpl, std::size_t trials,
                          std::uint64_t seed, double step, double tolerance) {
    Rng rng(seed, Stream::Test);
    GradcheckReport rep;
    rep.template_name = tmpl.name;
    rep.trials = trials;
    rep.per_parameter.assign(tmpl.n_trainable, 0.0);
    std::vector<double> params(tmpl.n_trainable);
    std::vector<double> enc(tmpl.n_encoding);
    for (std::size_t t = 0; t < trials; ++t) {
        for (auto &p : params) p = rng.uniform(0.0, 2.0 * kPi);
        for (auto &e : enc) e = rng.uniform(-kPi, kPi);
        const Eigen::VectorXd analytic =
            qsim::gradient(tmpl, params, enc, tmpl.readout_wire);
        for (std::size_t k = 0; k < params.size(); ++k) {
            const double saved = params[k];
            params[k] = saved + step;
            const double up = expectation(tmpl, params, enc);
            params[k] = saved - step;
            const double down = expectation(tmpl, params, enc);
            params[k] = saved;
            const double numeric = (up - down) / (2.0 * step);
            const double err =
                relative_error(analytic(static_cast<Eigen::Index>(k)), numeric);
            rep.per_parameter[k] = std::max(rep.per_parameter[k], err);
            rep.max_relative_error = std::max(rep.max_relative_error, err);
        }
    }
    rep.passed = rep.max_relative_error < tolerance;
    return rep;
}

GateFidelityReport gate_fidelity(std::size_t draws, std::uint64_t seed) {
    Rng rng(seed, Stream::Test);
    GateFidelityReport rep;
    const Complex i{0.0, 1.0};
    auto maxDiff = [](const auto &a, const auto &b) {
        return (a - b).cwiseAbs().maxCoeff();
    };
    for (std::size_t d = 0; d < draws; ++d) {
        const double phi = rng.uniform(-2 * kPi, 2 * kPi);
        const double theta = rng.uniform(-2 * kPi, 2 * kPi);
        const double omega = rng.uniform(-2 * kPi, 2 * kPi);
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);

        qsim::Matrix4c crot;
        crot << 1, 0, 0, 0, //
            0, 1, 0, 0,     //
            0, 0, expi(-(phi + omega) / 2) * c, -expi((phi - omega) / 2) * s, //
            0, 0, expi(-(phi - omega) / 2) * s, expi((phi + omega) / 2) * c;
        const double v3[3] = {phi, theta, omega};
        rep.crot_max_diff =
            std::max(rep.crot_max_diff, maxDiff(qsim::gate_matrix(GateKind::CROT, v3), crot));

        qsim::Matrix4c cphase = qsim::Matrix4c::Identity();
        cphase(3, 3) = expi(phi);
        rep.cphase_max_diff = std::max(
            rep.cphase_max_diff,
            maxDiff(qsim::gate_matrix(GateKind::CPHASE, std::span(&phi, 1)), cphase));

        qsim::Matrix2c rz = qsim::Matrix2c::Zero();
        rz(0, 0) = expi(-theta / 2);
        rz(1, 1) = expi(theta / 2);
        rep.rz_max_diff = std::max(
            rep.rz_max_diff,
            maxDiff(qsim::Matrix2c(qsim::gate_matrix(GateKind::RZ, std::span(&theta, 1))
                                       .topLeftCorner<2, 2>()),
                    rz));

        qsim::Matrix2c rx;
        rx << c, -i * s, -i * s, c;
        rep.rx_max_diff = std::max(
            rep.rx_max_diff,
            maxDiff(qsim::Matrix2c(qsim::gate_matrix(GateKind::RX, std::span(&theta, 1))
                                       .topLeftCorner<2, 2>()),
                    rx));

        for (auto kind : kKinds) {
            const qsim::Matrix4c m = qsim::gate_matrix(kind, std::span(v3, qsim::arity(kind)));
            const int dim = qsim::wire_count(kind) == 1 ? 2 : 4;
            const Eigen::MatrixXcd u = m.topLeftCorner(dim, dim);
            rep.unitarity_max_diff = std::max(
                rep.unitarity_max_diff,
                (u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff());
        }
    }
    qsim::Matrix2c h;
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    rep.hadamard_max_diff = maxDiff(
        qsim::Matrix2c(qsim::gate_matrix(GateKind::H, {}).topLeftCorner<2, 2>()), h);

    rep.passed = rep.crot_max_diff <= 1e-15 && rep.cphase_max_diff <= 1e-15 &&
                 rep.hadamard_max_diff <= 1e-15 && rep.rz_max_diff <= 1e-15 &&
                 rep.rx_max_diff <= 1e-15 && rep.unitarity_max_diff <= 1e-12;
    return rep;
}

std::vector<CheckLine> run_selftest(std::size_t gradient_trials, std::uint64_t seed) {
    std::vector<CheckLine> lines;

    const auto oracle = oracle_equivalence(200, seed);
    lines.push_back({"oracle equivalence (200 circuits)", oracle.passed,
                     "max |diff| " + fmt("%.3e", oracle.max_abs_diff)});

    const auto fid = gate_fidelity(1000, seed);
    lines.push_back({"gate matrices", fid.passed,
                     "CROT " + fmt("%.1e", fid.crot_max_diff) + ", CPHASE " +
                         fmt("%.1e", fid.cphase_max_diff) + ", unitarity " +
                         fmt("%.1e", fid.unitarity_max_diff)});

    for (const auto &id : templates::list_templates()) {
        const auto tmpl = templates::build_template(id.kind, id.mode);
        const auto rep = gradcheck(tmpl, gradient_trials, seed);
        lines.push_back({"gradient " + tmpl.name, rep.passed,
                         "max rel err " + fmt("%.3e", rep.max_relative_error)});
    }

    const Eigen::Vector3d white = colorspace::rgb_to_lab(Eigen::Vector3d{1, 1, 1});
    const Eigen::Vector3d red = colorspace::rgb_to_lab(Eigen::Vector3d{1, 0, 0});
    const bool lab_ok = std::abs(white(0) - 100.0) < 1e-6 && std::abs(white(1)) < 0.01 &&
                        std::abs(white(2)) < 0.01 && std::abs(red(0) - 53.2406) < 0.05 &&
                        std::abs(red(1) - 80.0923) < 0.05 && std::abs(red(2) - 67.2028) < 0.05;
    lines.push_back({"LAB reference colors", lab_ok,
                     "red -> (" + fmt("%.4f", red(0)) + ", " + fmt("%.4f", red(1)) + ", " +
                         fmt("%.4f", red(2)) + ")"});
    const Eigen::Vector3d ywhite = colorspace::rgb_to_ycbcr(Eigen::Vector3d{1, 1, 1});
    const Eigen::Vector3d yblack = colorspace::rgb_to_ycbcr(Eigen::Vector3d{0, 0, 0});
    const bool ycc_ok = (ywhite - Eigen::Vector3d{235, 128, 128}).cwiseAbs().maxCoeff() < 1e-9 &&
                        (yblack - Eigen::Vector3d{16, 128, 128}).cwiseAbs().maxCoeff() < 1e-12;
    lines.push_back({"YCbCr reference colors", ycc_ok, "white/black"});
    return lines;
}

} // namespace hqcnn::harness
