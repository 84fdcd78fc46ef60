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
#include "hqcnn/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hqcnn {

std::string_view to_string(ColorSpace space) {
    switch (space) {
    case ColorSpace::RGB01: return "RGB01";
    case ColorSpace::LAB: return "LAB";
    case ColorSpace::YCBCR: return "YCBCR";
    case ColorSpace::UNIT: return "UNIT";
    case ColorSpace::ANGLES: return "ANGLES";
    }
    return "?";
}

Range nominal_range(ColorSpace space, std::size_t channel) {
    switch (space) {
    case ColorSpace::RGB01:
    case ColorSpace::UNIT:
        return {0.0, 1.0};
    case ColorSpace::LAB:
        return channel == 0 ? Range{0.0, 100.0} : Range{-128.0, 127.0};
    case ColorSpace::YCBCR:
        return channel == 0 ? Range{16.0, 235.0} : Range{16.0, 240.0};
    case ColorSpace::ANGLES:
        return {-std::numbers::pi, std::numbers::pi};
    }
    throw std::invalid_argument("unknown color space");
}

} // namespace hqcnn

namespace hqcnn::colorspace {

namespace {

constexpr double kDelta = 6.0 / 29.0;

double labF(double t) {
    return t > kDelta * kDelta * kDelta ? std::cbrt(t)
                                        : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

void requireSpace(const ImageTensor &img, ColorSpace space, const char *op) {
    if (img.space != space) {
        throw std::invalid_argument(std::string(op) + ": expected " +
                                    std::string(to_string(space)) + " input, got " +
                                    std::string(to_string(img.space)));
    }
}

void requireRgb(const Eigen::Vector3d &rgb) {
    for (int i = 0; i < 3; ++i) {
        if (!(rgb(i) >= -kRangeSlack && rgb(i) <= 1.0 + kRangeSlack)) {
            throw std::out_of_range("RGB value outside [0, 1]: " +
                                    std::to_string(rgb(i)));
        }
    }
}

template <typename PixelFn>
ImageTensor mapPixels(const ImageTensor &img, ColorSpace out_space,
                      PixelFn fn) {
    if (img.numChannels() != 3) {
        throw std::invalid_argument("color conversion needs 3 channels");
    }
    ImageTensor out(out_space, img.height(), img.width(), 3);
    for (std::size_t r = 0; r < img.height(); ++r) {
        for (std::size_t c = 0; c < img.width(); ++c) {
            const Eigen::Vector3d v =
                fn(Eigen::Vector3d{img(r, c, 0), img(r, c, 1), img(r, c, 2)});
            for (std::size_t k = 0; k < 3; ++k) {
                out(r, c, k) = v(static_cast<Eigen::Index>(k));
            }
        }
    }
    return out;
}

} // namespace

const Eigen::Matrix3d &srgb_to_xyz_matrix() {
    static const Eigen::Matrix3d m = [] {
        Eigen::Matrix3d x;
        x << 0.412453, 0.357580, 0.180423, //
            0.212671, 0.715160, 0.072169,  //
            0.019334, 0.119193, 0.950227;
        return x;
    }();
    return m;
}

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

Eigen::Vector3d rgb_to_lab(const Eigen::Vector3d &rgb) {
    requireRgb(rgb);
    const Eigen::Vector3d clamped = rgb.cwiseMax(0.0).cwiseMin(1.0);
    const Eigen::Vector3d lin = clamped.unaryExpr(&srgb_to_linear);
    const Eigen::Vector3d xyz = srgb_to_xyz_matrix() * lin;
    const Eigen::Vector3d f = xyz.cwiseQuotient(kWhiteD65).unaryExpr(&labF);
    return {116.0 * f(1) - 16.0, 500.0 * (f(0) - f(1)), 200.0 * (f(1) - f(2))};
}

Eigen::Vector3d rgb_to_ycbcr(const Eigen::Vector3d &rgb) {
    requireRgb(rgb);
    const Eigen::Vector3d v = rgb.cwiseMax(0.0).cwiseMin(1.0);
    // Chroma rows sum to zero; the difference form keeps gray at exactly 128.
    const double r = v(0), g = v(1), b = v(2);
    return {16.0 + 65.481 * r + 128.553 * g + 24.966 * b,
            128.0 + 112.0 * (b - g) - 37.797 * (r - g),
            128.0 + 112.0 * (r - g) - 18.214 * (b - g)};
}

ImageTensor rgb_to_lab(const ImageTensor &img) {
    requireSpace(img, ColorSpace::RGB01, "rgb_to_lab");
    return mapPixels(img, ColorSpace::LAB,
                     [](const Eigen::Vector3d &p) { return rgb_to_lab(p); });
}

ImageTensor rgb_to_ycbcr(const ImageTensor &img) {
    requireSpace(img, ColorSpace::RGB01, "rgb_to_ycbcr");
    return mapPixels(img, ColorSpace::YCBCR,
                     [](const Eigen::Vector3d &p) { return rgb_to_ycbcr(p); });
}

ImageTensor scale_to_unit(const ImageTensor &img) {
    if (img.space == ColorSpace::UNIT) {
        return img;
    }
    if (img.space == ColorSpace::ANGLES) {
        throw std::invalid_argument("scale_to_unit: input is already angles");
    }
    ImageTensor out = img;
    out.space = ColorSpace::UNIT;
    for (std::size_t ch = 0; ch < img.numChannels(); ++ch) {
        const Range r = nominal_range(img.space, ch);
        const double span = r.hi - r.lo;
        const double min = img.channels[ch].minCoeff();
        const double max = img.channels[ch].maxCoeff();
        if (min < r.lo - kRangeSlack * span || max > r.hi + kRangeSlack * span) {
            throw std::out_of_range(
                "value outside nominal range of " +
                std::string(to_string(img.space)) + " channel " +
                std::to_string(ch));
        }
        out.channels[ch] =
            ((img.channels[ch].array() - r.lo) / span).cwiseMax(0.0).cwiseMin(1.0);
    }
    return out;
}

ImageTensor unit_to_angles(const ImageTensor &img) {
    if (img.space != ColorSpace::UNIT && img.space != ColorSpace::RGB01) {
        throw std::invalid_argument("unit_to_angles: expected [0, 1] input");
    }
    ImageTensor unit = scale_to_unit(img);
    unit.space = ColorSpace::ANGLES;
    for (auto &m : unit.channels) {
        m = (2.0 * std::numbers::pi) * m.array() - std::numbers::pi;
    }
    return unit;
}

ImageTensor normalize_to_angles(const ImageTensor &img) {
    return unit_to_angles(scale_to_unit(img));
}

ImageTensor bilinear_resize(const ImageTensor &img, std::size_t out_h,
                            std::size_t out_w) {
    if (out_h == 0 || out_w == 0) {
        throw std::invalid_argument("bilinear_resize: zero target dimension");
    }
    if (img.height() == 0 || img.width() == 0) {
        throw std::invalid_argument("bilinear_resize: empty input");
    }
    struct Tap {
        Eigen::Index i0, i1;
        double frac;
    };
    auto taps = [](std::size_t in, std::size_t out) {
        std::vector<Tap> t(out);
        const double scale = static_cast<double>(in) / static_cast<double>(out);
        const double last = static_cast<double>(in - 1);
        for (std::size_t d = 0; d < out; ++d) {
            double src = (static_cast<double>(d) + 0.5) * scale - 0.5;
            src = std::clamp(src, 0.0, last);
            const auto i0 = static_cast<Eigen::Index>(std::floor(src));
            const auto i1 = std::min<Eigen::Index>(i0 + 1, static_cast<Eigen::Index>(in - 1));
            t[d] = {i0, i1, src - static_cast<double>(i0)};
        }
        return t;
    };
    const auto rows = taps(img.height(), out_h);
    const auto cols = taps(img.width(), out_w);

    ImageTensor out(img.space, out_h, out_w, img.numChannels());
    for (std::size_t ch = 0; ch < img.numChannels(); ++ch) {
        const Eigen::MatrixXd &src = img.channels[ch];
        Eigen::MatrixXd &dst = out.channels[ch];
        for (std::size_t r = 0; r < out_h; ++r) {
            const Tap &ty = rows[r];
            for (std::size_t c = 0; c < out_w; ++c) {
                const Tap &tx = cols[c];
                const double top = std::lerp(src(ty.i0, tx.i0), src(ty.i0, tx.i1), tx.frac);
                const double bot = std::lerp(src(ty.i1, tx.i0), src(ty.i1, tx.i1), tx.frac);
                dst(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    std::lerp(top, bot, ty.frac);
            }
        }
    }
    return out;
}

ImageTensor preprocess(const ImageTensor &rgb01, Target target,
                       std::size_t out_h, std::size_t out_w) {
    requireSpace(rgb01, ColorSpace::RGB01, "preprocess");
    ImageTensor converted = target == Target::LAB     ? rgb_to_lab(rgb01)
                            : target == Target::YCBCR ? rgb_to_ycbcr(rgb01)
                                                      : rgb01;
    return unit_to_angles(
        bilinear_resize(scale_to_unit(converted), out_h, out_w));
}

} // namespace hqcnn::colorspace
