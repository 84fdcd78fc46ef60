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

#include "hqcnn/colorspace.hpp"

#include <cmath>

namespace hqcnn::testing {

/// CIE LAB -> sRGB, the textbook inverse; only used to check the forward path.
inline Eigen::Vector3d lab_to_rgb(const Eigen::Vector3d &lab) {
    using colorspace::kWhiteD65;
    const double fy = (lab(0) + 16.0) / 116.0;
    const double fx = fy + lab(1) / 500.0;
    const double fz = fy - lab(2) / 200.0;
    const double d = 6.0 / 29.0;
    auto finv = [d](double f) { return f > d ? f * f * f : 3 * d * d * (f - 4.0 / 29.0); };
    const Eigen::Vector3d xyz{finv(fx) * kWhiteD65(0), finv(fy) * kWhiteD65(1),
                              finv(fz) * kWhiteD65(2)};
    const Eigen::Vector3d lin = colorspace::srgb_to_xyz_matrix().inverse() * xyz;
    Eigen::Vector3d rgb;
    for (int i = 0; i < 3; ++i) {
        const double c = lin(i);
        rgb(i) = c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
    }
    return rgb;
}

} // namespace hqcnn::testing
