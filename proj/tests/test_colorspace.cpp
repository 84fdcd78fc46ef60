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
#include "hqcnn/rng.hpp"
#include "support/lab_inverse.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hqcnn;
using namespace hqcnn::colorspace;
using Catch::Matchers::WithinAbs;

namespace {

constexpr double kPi = std::numbers::pi;

ImageTensor single(ColorSpace s, const Eigen::MatrixXd &m) { return ImageTensor(s, {m}); }

} // namespace

TEST_CASE("LAB reference colors", "[colorspace]") {
    // Reference values from scikit-image rgb2lab (D65, 2 degree observer).
    struct Row {
        Eigen::Vector3d rgb, lab;
    };
    const Row rows[] = {
        {{1, 1, 1}, {100.0, -0.00245, 0.00465}},
        {{0, 0, 0}, {0, 0, 0}},
        {{1, 0, 0}, {53.24058794, 80.09230823, 67.20275104}},
        {{0, 1, 0}, {87.73509949, -86.18302974, 83.17970318}},
        {{0.2, 0.4, 0.6}, {42.00800059, -0.1540412, -32.84289742}},
    };
    for (const auto &r : rows) {
        const Eigen::Vector3d lab = rgb_to_lab(r.rgb);
        CAPTURE(r.rgb.transpose(), lab.transpose());
        CHECK((lab - r.lab).cwiseAbs().maxCoeff() < 1e-5);
    }
    const Eigen::Vector3d white = rgb_to_lab(Eigen::Vector3d{1, 1, 1});
    CHECK_THAT(white(0), WithinAbs(100.0, 1e-9));
    CHECK(std::abs(white(1)) < 0.01);
    CHECK(std::abs(white(2)) < 0.01);
}

TEST_CASE("YCbCr reference colors", "[colorspace]") {
    auto y = [](double r, double g, double b) { return rgb_to_ycbcr(Eigen::Vector3d{r, g, b}); };
    CHECK((y(0, 0, 0) - Eigen::Vector3d{16, 128, 128}).cwiseAbs().maxCoeff() == 0.0);
    CHECK((y(1, 1, 1) - Eigen::Vector3d{235, 128, 128}).cwiseAbs().maxCoeff() < 1e-12);
    // scikit-image rgb2ycbcr
    CHECK((y(1, 0, 0) - Eigen::Vector3d{81.481, 90.203, 240.0}).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((y(0, 1, 0) - Eigen::Vector3d{144.553, 53.797, 34.214}).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((y(0.2, 0.4, 0.6) - Eigen::Vector3d{95.497, 157.9594, 101.9572}).cwiseAbs().maxCoeff() <
          1e-9);
    const auto gray = y(0.5, 0.5, 0.5);
    CHECK(gray(1) == 128.0);
    CHECK(gray(2) == 128.0);
}

TEST_CASE("Gray stays achromatic", "[colorspace][property]") {
    Rng rng(1, Stream::Test);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform();
        const Eigen::Vector3d lab = rgb_to_lab(Eigen::Vector3d::Constant(v));
        CHECK(std::abs(lab(1)) < 0.01);
        CHECK(std::abs(lab(2)) < 0.01);
        const Eigen::Vector3d ycc = rgb_to_ycbcr(Eigen::Vector3d::Constant(v));
        CHECK(ycc(1) == 128.0);
        CHECK(ycc(2) == 128.0);
    }
}

TEST_CASE("LAB round trip through the inverse", "[colorspace][property]") {
    Rng rng(2, Stream::Test);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Vector3d rgb{rng.uniform(), rng.uniform(), rng.uniform()};
        worst = std::max(worst, (testing::lab_to_rgb(rgb_to_lab(rgb)) - rgb).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("Image-level conversion matches pixel-level", "[colorspace]") {
    Rng rng(3, Stream::Test);
    ImageTensor img(ColorSpace::RGB01, 3, 4, 3);
    for (auto &ch : img.channels)
        for (auto &v : ch.reshaped()) v = rng.uniform();
    const auto lab = rgb_to_lab(img);
    const auto ycc = rgb_to_ycbcr(img);
    CHECK(lab.space == ColorSpace::LAB);
    CHECK(ycc.space == ColorSpace::YCBCR);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const Eigen::Vector3d px{img(r, c, 0), img(r, c, 1), img(r, c, 2)};
            const auto a = rgb_to_lab(px);
            const auto b = rgb_to_ycbcr(px);
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(lab(r, c, k) == a(static_cast<Eigen::Index>(k)));
                CHECK(ycc(r, c, k) == b(static_cast<Eigen::Index>(k)));
            }
        }
    CHECK_THROWS(rgb_to_lab(lab));
}

TEST_CASE("Angle scaling", "[colorspace]") {
    auto angle = [](ColorSpace s, std::size_t ch, double v) {
        ImageTensor img(s, 1, 1, 3, 0.0);
        if (s == ColorSpace::LAB || s == ColorSpace::YCBCR) {
            for (std::size_t k = 0; k < 3; ++k) img(0, 0, k) = nominal_range(s, k).lo;
        }
        img(0, 0, ch) = v;
        return normalize_to_angles(img)(0, 0, ch);
    };
    CHECK(angle(ColorSpace::RGB01, 0, 0.5) == 0.0);
    CHECK(angle(ColorSpace::LAB, 0, 0.0) == -kPi);
    CHECK(angle(ColorSpace::LAB, 0, 100.0) == Catch::Approx(kPi).margin(1e-15));
    CHECK_THAT(angle(ColorSpace::YCBCR, 0, 125.5), WithinAbs(0.0, 1e-15));
    CHECK_THAT(angle(ColorSpace::LAB, 1, -128.0), WithinAbs(-kPi, 1e-15));
    CHECK_THAT(angle(ColorSpace::YCBCR, 2, 240.0), WithinAbs(kPi, 1e-15));

    SECTION("values outside the nominal range are rejected") {
        ImageTensor bad(ColorSpace::RGB01, 1, 1, 1, 1.5);
        CHECK_THROWS(normalize_to_angles(bad));
        ImageTensor angles(ColorSpace::ANGLES, 1, 1, 1, 0.0);
        CHECK_THROWS(normalize_to_angles(angles));
    }
    SECTION("bijection on each nominal range") {
        Rng rng(4, Stream::Test);
        for (auto s : {ColorSpace::RGB01, ColorSpace::LAB, ColorSpace::YCBCR}) {
            for (std::size_t ch = 0; ch < 3; ++ch) {
                const Range r = nominal_range(s, ch);
                for (int i = 0; i < 200; ++i) {
                    const double v = rng.uniform(r.lo, r.hi);
                    const double a = angle(s, ch, v);
                    const double back = r.lo + (a + kPi) / (2 * kPi) * (r.hi - r.lo);
                    CHECK(std::abs(back - v) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("Bilinear resize", "[colorspace]") {
    SECTION("same size is the identity") {
        Rng rng(5, Stream::Test);
        Eigen::MatrixXd m(7, 5);
        for (auto &v : m.reshaped()) v = rng.uniform();
        CHECK(bilinear_resize(single(ColorSpace::UNIT, m), 7, 5).channels[0] == m);
    }
    SECTION("constant stays constant") {
        const auto out =
            bilinear_resize(single(ColorSpace::UNIT, Eigen::MatrixXd::Constant(32, 32, 0.3)), 10, 13);
        CHECK((out.channels[0].array() == 0.3).all());
        CHECK(out.height() == 10);
        CHECK(out.width() == 13);
    }
    SECTION("2x2 to 3x3") {
        Eigen::MatrixXd m(2, 2);
        m << 0, 1, 2, 3;
        Eigen::MatrixXd expect(3, 3);
        expect << 0, 0.5, 1, 1, 1.5, 2, 2, 2.5, 3;
        const auto out = bilinear_resize(single(ColorSpace::UNIT, m), 3, 3).channels[0];
        CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(out(1, 1) == 1.5);
    }
    SECTION("matches OpenCV INTER_LINEAR") {
        Eigen::MatrixXd a(4, 5);
        for (int i = 0; i < 20; ++i) a(i / 5, i % 5) = std::pow(i, 1.5);
        Eigen::MatrixXd ea(3, 3);
        ea << 2.33653435, 5.44373247, 10.14489884, //
            22.79767402, 30.04473928, 38.04433173, //
            55.5931071, 65.33886626, 75.64816858;
        CHECK((bilinear_resize(single(ColorSpace::UNIT, a), 3, 3).channels[0] - ea)
                  .cwiseAbs()
                  .maxCoeff() < 1e-7);

        Eigen::MatrixXd b(4, 4);
        for (int i = 0; i < 16; ++i) b(i / 4, i % 4) = i;
        Eigen::MatrixXd eb(5, 6);
        eb << 0, 0.5, 7.0 / 6, 11.0 / 6, 2.5, 3, //
            2.8, 3.3, 3.96666667, 4.63333333, 5.3, 5.8, //
            6, 6.5, 7.16666667, 7.83333333, 8.5, 9, //
            9.2, 9.7, 10.36666667, 11.03333333, 11.7, 12.2, //
            12, 12.5, 13.16666667, 13.83333333, 14.5, 15;
        CHECK((bilinear_resize(single(ColorSpace::UNIT, b), 5, 6).channels[0] - eb)
                  .cwiseAbs()
                  .maxCoeff() < 1e-7);
    }
    SECTION("output stays within the input bounds") {
        Rng rng(6, Stream::Test);
        for (int t = 0; t < 50; ++t) {
            const auto h = static_cast<Eigen::Index>(1 + rng.below(40));
            const auto w = static_cast<Eigen::Index>(1 + rng.below(40));
            Eigen::MatrixXd m(h, w);
            for (auto &v : m.reshaped()) v = rng.uniform(-3, 3);
            const auto out = bilinear_resize(single(ColorSpace::UNIT, m), 1 + rng.below(40),
                                             1 + rng.below(40))
                                 .channels[0];
            CHECK(out.minCoeff() >= m.minCoeff());
            CHECK(out.maxCoeff() <= m.maxCoeff());
        }
    }
}

TEST_CASE("Preprocessing pipeline", "[colorspace]") {
    const ImageTensor white(ColorSpace::RGB01, 32, 32, 3, 1.0);
    const auto lab = preprocess(white, Target::LAB, 10, 10);
    CHECK(lab.space == ColorSpace::ANGLES);
    CHECK(lab.height() == 10);
    CHECK(lab.numChannels() == 3);
    CHECK_THAT(lab(4, 4, 0), WithinAbs(kPi, 1e-12));
    // a* of white is -0.00245 on a [-128, 127] scale
    CHECK_THAT(lab(4, 4, 1), WithinAbs((128.0 - 0.00245) / 255.0 * 2 * kPi - kPi, 1e-6));
    const auto rgb = preprocess(white, Target::RGB, 10, 10);
    CHECK((rgb.channels[2].array() == kPi).all());
    const auto ycc = preprocess(ImageTensor(ColorSpace::RGB01, 32, 32, 3, 0.0), Target::YCBCR, 10, 10);
    CHECK_THAT(ycc(0, 0, 0), WithinAbs(-kPi, 1e-15));
    CHECK_THAT(ycc(0, 0, 1), WithinAbs((112.0 / 224.0) * 2 * kPi - kPi, 1e-12));

    Rng rng(9, Stream::Test);
    ImageTensor img(ColorSpace::RGB01, 32, 32, 3);
    for (auto &ch : img.channels)
        for (auto &v : ch.reshaped()) v = rng.uniform();
    for (auto t : {Target::RGB, Target::LAB, Target::YCBCR}) {
        const auto out = preprocess(img, t, 10, 10);
        for (const auto &ch : out.channels) {
            CHECK(ch.minCoeff() >= -kPi);
            CHECK(ch.maxCoeff() <= kPi);
        }
    }
}
