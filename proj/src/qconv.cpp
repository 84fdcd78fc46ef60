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
#include "hqcnn/qconv.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqcnn::qconv {

namespace {

constexpr double kAngleSlack = 1e-9;

void checkInputs(const ImageTensor &image, const qsim::CircuitTemplate &tmpl,
                 std::span<const double> params, std::size_t stride) {
    if (stride == 0) {
        throw std::invalid_argument("qconv: stride must be positive");
    }
    if (image.height() < kKernel || image.width() < kKernel) {
        throw std::invalid_argument("qconv: image smaller than the 2x2 kernel");
    }
    const std::size_t needed = image.numChannels() * kKernel * kKernel;
    if (needed != tmpl.n_encoding) {
        throw std::invalid_argument(
            "qconv: " + std::to_string(image.numChannels()) +
            "-channel image does not match template " + tmpl.name +
            " (expects " + std::to_string(tmpl.n_encoding) + " encodings)");
    }
    if (params.size() != tmpl.n_trainable) {
        throw std::invalid_argument("qconv: parameter count mismatch for " +
                                    tmpl.name);
    }
    for (const auto &ch : image.channels) {
        if (!(ch.minCoeff() >= -std::numbers::pi - kAngleSlack &&
              ch.maxCoeff() <= std::numbers::pi + kAngleSlack)) {
            throw std::out_of_range("qconv: input angle outside [-pi, pi]");
        }
    }
}

} // namespace

std::size_t output_extent(std::size_t in, std::size_t stride) {
    return in < kKernel ? 0 : (in - kKernel) / stride + 1;
}

Eigen::VectorXd window_encodings(const ImageTensor &image, std::size_t i,
                                 std::size_t j, std::size_t stride) {
    const std::size_t r = i * stride;
    const std::size_t c = j * stride;
    Eigen::VectorXd enc(static_cast<Eigen::Index>(image.numChannels() * 4));
    Eigen::Index k = 0;
    for (std::size_t ch = 0; ch < image.numChannels(); ++ch) {
        enc(k++) = image(r, c, ch);
        enc(k++) = image(r, c + 1, ch);
        enc(k++) = image(r + 1, c, ch);
        enc(k++) = image(r + 1, c + 1, ch);
    }
    return enc;
}

FeatureMap qconv_forward(const ImageTensor &image,
                         const qsim::CircuitTemplate &tmpl,
                         std::span<const double> params, std::size_t stride) {
    checkInputs(image, tmpl, params, stride);
    const std::size_t oh = output_extent(image.height(), stride);
    const std::size_t ow = output_extent(image.width(), stride);
    FeatureMap out(oh, ow);
    for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j) {
            const Eigen::VectorXd enc = window_encodings(image, i, j, stride);
            const auto state = qsim::run_circuit(
                tmpl, params, {enc.data(), static_cast<std::size_t>(enc.size())});
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                qsim::expectation_z(state, tmpl.readout_wire);
        }
    }
    return out;
}

ForwardWithJacobian qconv_forward_jacobian(const ImageTensor &image,
                                           const qsim::CircuitTemplate &tmpl,
                                           std::span<const double> params,
                                           std::size_t stride) {
    checkInputs(image, tmpl, params, stride);
    const std::size_t oh = output_extent(image.height(), stride);
    const std::size_t ow = output_extent(image.width(), stride);
    ForwardWithJacobian out;
    out.map.resize(static_cast<Eigen::Index>(oh), static_cast<Eigen::Index>(ow));
    out.jacobian.resize(static_cast<Eigen::Index>(oh * ow),
                        static_cast<Eigen::Index>(tmpl.n_trainable));
    Eigen::Index row = 0;
    for (std::size_t i = 0; i < oh; ++i) {
        for (std::size_t j = 0; j < ow; ++j, ++row) {
            const Eigen::VectorXd enc = window_encodings(image, i, j, stride);
            auto vg = qsim::value_and_gradient(
                tmpl, params, {enc.data(), static_cast<std::size_t>(enc.size())},
                tmpl.readout_wire);
            ++out.circuit_runs;
            out.map(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                vg.value;
            out.jacobian.row(row) = vg.gradient.transpose();
        }
    }
    return out;
}

Eigen::VectorXd qconv_backward(const ImageTensor &image,
                               const qsim::CircuitTemplate &tmpl,
                               std::span<const double> params,
                               const Eigen::MatrixXd &upstream_grad,
                               std::size_t stride) {
    checkInputs(image, tmpl, params, stride);
    const auto oh = static_cast<Eigen::Index>(output_extent(image.height(), stride));
    const auto ow = static_cast<Eigen::Index>(output_extent(image.width(), stride));
    if (upstream_grad.rows() != oh || upstream_grad.cols() != ow) {
        throw std::invalid_argument("qconv_backward: upstream gradient shape " +
                                    std::to_string(upstream_grad.rows()) + "x" +
                                    std::to_string(upstream_grad.cols()) +
                                    " does not match feature map");
    }
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(tmpl.n_trainable));
    for (Eigen::Index i = 0; i < oh; ++i) {
        for (Eigen::Index j = 0; j < ow; ++j) {
            const double g = upstream_grad(i, j);
            if (g == 0.0) {
                continue;
            }
            const Eigen::VectorXd enc = window_encodings(
                image, static_cast<std::size_t>(i), static_cast<std::size_t>(j), stride);
            grad += g * qsim::gradient(tmpl, params,
                                       {enc.data(), static_cast<std::size_t>(enc.size())},
                                       tmpl.readout_wire);
        }
    }
    return grad;
}

} // namespace hqcnn::qconv
