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

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

namespace hqcnn {

/// What the values of an ImageTensor mean.
enum class ColorSpace {
    RGB01,  ///< sRGB in [0, 1]
    LAB,    ///< CIELAB, D65
    YCBCR,  ///< BT.601 studio swing
    UNIT,   ///< any space rescaled channelwise to [0, 1]
    ANGLES, ///< rotation angles in [-pi, pi]
};

std::string_view to_string(ColorSpace space);

/// Nominal [lo, hi] of one channel.
struct Range {
    double lo;
    double hi;
};

Range nominal_range(ColorSpace space, std::size_t channel);

/// H x W x C image stored as one Eigen matrix per channel.
struct ImageTensor {
    ColorSpace space = ColorSpace::RGB01;
    std::vector<Eigen::MatrixXd> channels;

    ImageTensor() = default;
    ImageTensor(ColorSpace s, std::size_t h, std::size_t w, std::size_t c,
                double fill = 0.0)
        : space(s),
          channels(c, Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(h),
                                                static_cast<Eigen::Index>(w),
                                                fill)) {}
    ImageTensor(ColorSpace s, std::vector<Eigen::MatrixXd> ch)
        : space(s), channels(std::move(ch)) {
        for (const auto &m : channels) {
            if (m.rows() != channels.front().rows() ||
                m.cols() != channels.front().cols()) {
                throw std::invalid_argument("channel shapes differ");
            }
        }
    }

    [[nodiscard]] std::size_t height() const {
        return channels.empty() ? 0 : static_cast<std::size_t>(channels[0].rows());
    }
    [[nodiscard]] std::size_t width() const {
        return channels.empty() ? 0 : static_cast<std::size_t>(channels[0].cols());
    }
    [[nodiscard]] std::size_t numChannels() const { return channels.size(); }

    double &operator()(std::size_t r, std::size_t c, std::size_t ch) {
        return channels[ch](static_cast<Eigen::Index>(r),
                            static_cast<Eigen::Index>(c));
    }
    double operator()(std::size_t r, std::size_t c, std::size_t ch) const {
        return channels[ch](static_cast<Eigen::Index>(r),
                            static_cast<Eigen::Index>(c));
    }

    /// Single-channel view copy.
    [[nodiscard]] ImageTensor channel(std::size_t ch) const {
        return ImageTensor(space, {channels.at(ch)});
    }

    bool operator==(const ImageTensor &) const = default;
};

} // namespace hqcnn
