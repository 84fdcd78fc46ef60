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
 * Quantum convolution: a 2x2 window slides over an angle image and every
 * window is evaluated by one filter circuit whose readout <Z> becomes one
 * feature-map cell. One parameter vector (one kernel) is shared by all
 * windows.
 */
#pragma once

#include "hqcnn/image.hpp"
#include "hqcnn/qsim/circuit.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>

namespace hqcnn::qconv {

using FeatureMap = Eigen::MatrixXd;

inline constexpr std::size_t kKernel = 2;

/// Output rows/cols for an input extent and stride (no padding).
std::size_t output_extent(std::size_t in, std::size_t stride);

/// Encoding angles for window (i, j): channel-major, then TL, TR, BL, BR.
Eigen::VectorXd window_encodings(const ImageTensor &image, std::size_t i,
                                 std::size_t j, std::size_t stride = 1);

FeatureMap qconv_forward(const ImageTensor &image,
                         const qsim::CircuitTemplate &tmpl,
                         std::span<const double> params,
                         std::size_t stride = 1);

Eigen::VectorXd qconv_backward(const ImageTensor &image,
                               const qsim::CircuitTemplate &tmpl,
                               std::span<const double> params,
                               const Eigen::MatrixXd &upstream_grad,
                               std::size_t stride = 1);

/// Forward pass that also keeps d(cell)/d(params) for every window.
struct ForwardWithJacobian {
    FeatureMap map;
    /// Row k = gradient of cell k, cells in row-major order.
    Eigen::MatrixXd jacobian;
    /// Number of circuit evaluations performed.
    std::size_t circuit_runs = 0;
};

ForwardWithJacobian qconv_forward_jacobian(const ImageTensor &image,
                                           const qsim::CircuitTemplate &tmpl,
                                           std::span<const double> params,
                                           std::size_t stride = 1);

} // namespace hqcnn::qconv
