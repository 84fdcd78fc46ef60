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
 * Color conversion and resampling.
 *
 * The preprocessing pipeline is fixed as
 *
 *     RGB01 -> {RGB01 | LAB | YCBCR} -> UNIT (nominal-range rescale)
 *           -> bilinear resize -> ANGLES (2 pi x - pi)
 *
 * so that interpolation always runs on bounded [0, 1] data. The rescale uses
 * fixed nominal ranges, not dataset statistics:
 *   RGB01  [0, 1] per channel
 *   LAB    L [0, 100], A and B [-128, 127]
 *   YCBCR  Y [16, 235], Cb and Cr [16, 240]
 */
#pragma once

#include "hqcnn/image.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace hqcnn::colorspace {

/// Values may exceed the nominal range by this much before they are
/// rejected; within it they are clamped.
inline constexpr double kRangeSlack = 1e-6;

/// D65 reference white used for LAB.
inline const Eigen::Vector3d kWhiteD65{0.95047, 1.0, 1.08883};

/// Linear sRGB -> XYZ (D65).
const Eigen::Matrix3d &srgb_to_xyz_matrix();

double srgb_to_linear(double c);

/// Single-pixel conversions; inputs in [0, 1].
Eigen::Vector3d rgb_to_lab(const Eigen::Vector3d &rgb);
Eigen::Vector3d rgb_to_ycbcr(const Eigen::Vector3d &rgb);

ImageTensor rgb_to_lab(const ImageTensor &img);
ImageTensor rgb_to_ycbcr(const ImageTensor &img);

/// Nominal range -> [0, 1]. Result space is UNIT.
ImageTensor scale_to_unit(const ImageTensor &img);
/// UNIT (or RGB01) -> [-pi, pi]. Result space is ANGLES.
ImageTensor unit_to_angles(const ImageTensor &img);
/// scale_to_unit followed by unit_to_angles.
ImageTensor normalize_to_angles(const ImageTensor &img);

/// Half-pixel-centre bilinear resampling with border clamping and no
/// anti-aliasing prefilter. Channels are resampled independently.
ImageTensor bilinear_resize(const ImageTensor &img, std::size_t out_h,
                            std::size_t out_w);

/// Target color space for the experiment pipeline.
enum class Target { RGB, LAB, YCBCR };

/// RGB01 image -> convert -> UNIT -> resize -> ANGLES.
ImageTensor preprocess(const ImageTensor &rgb01, Target target,
                       std::size_t out_h, std::size_t out_w);

} // namespace hqcnn::colorspace
