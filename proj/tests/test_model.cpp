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
#include "hqcnn/harness/model.hpp"
#include "hqcnn/templates.hpp"
#include "support/model_gradcheck.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace hqcnn;
using namespace hqcnn::harness;
using templates::ChannelMode;
using templates::TemplateKind;

namespace {

constexpr double kPi = std::numbers::pi;

double worstModelGradientError(TemplateKind kind, ChannelMode mode, std::uint64_t seed) {
    const auto r = testing::model_gradcheck(kind, mode, seed);
    REQUIRE(r.visited == r.parameter_count);
    return r.worst_relative_error;
}

ImageTensor toyImage(std::size_t side, std::size_t channels, Rng &rng) {
    return testing::toy_image(side, channels, rng);
}

} // namespace

TEST_CASE("End-to-end gradient on a 4x4 image", "[model][gradient]") {
    for (auto kind : templates::kAllKinds) {
        CAPTURE(templates::to_string(kind));
        CHECK(worstModelGradientError(kind, ChannelMode::Single, 1) < 1e-3);
    }
    CHECK(worstModelGradientError(TemplateKind::C14, ChannelMode::ChannelOverwrite, 2) < 1e-3);
    CHECK(worstModelGradientError(TemplateKind::U2_CROT, ChannelMode::ChannelOverwrite, 3) < 1e-3);
}

TEST_CASE("Model shapes and initialisation", "[model]") {
    Rng rng(7);
    auto circuit = templates::build_template(TemplateKind::C14, ChannelMode::Single);
    const auto model = HybridModel::init(circuit, 10, 32, 1, rng);
    CHECK(model.featureCount() == 81);
    CHECK(model.hidden.outputs() == 32);
    CHECK(model.output.outputs() == 2);
    CHECK(model.parameterCount() == 16 + 81 * 32 + 32 + 32 * 2 + 2);
    CHECK(model.qparams.minCoeff() >= 0.0);
    CHECK(model.qparams.maxCoeff() < 2 * kPi);
    CHECK(model.hidden.weights.cwiseAbs().maxCoeff() <= 1.0 / 9.0);
    CHECK(model.output.weights.cwiseAbs().maxCoeff() <= 1.0 / std::sqrt(32.0));

    // draw order: quantum parameters, hidden layer, output layer
    Rng replay(7);
    CHECK(model.qparams(0) == replay.uniform(0.0, 2 * kPi));
    for (int k = 1; k < 16; ++k) replay.next();
    CHECK(model.hidden.weights(0, 0) == replay.uniform(-1.0 / 9.0, 1.0 / 9.0));

    CHECK(HybridModel::init(circuit, 10, 32, 2, rng).featureCount() == 25);
}

TEST_CASE("Evaluation", "[model]") {
    Rng rng(8, Stream::Test);
    auto circuit = templates::build_template(TemplateKind::C18, ChannelMode::Single);
    const auto model = HybridModel::init(circuit, 10, 32, 1, rng);
    const auto img = toyImage(10, 1, rng);
    const auto e = evaluate(model, img, 1);
    CHECK(e.circuit_runs == 81);
    CHECK(e.probs.sum() == Catch::Approx(1.0).margin(1e-12));
    CHECK(e.loss == Catch::Approx(-std::log(e.probs(1))).epsilon(1e-12));
    CHECK(e.predicted == (e.probs(1) > e.probs(0) ? 1 : 0));

    // eval mode is the midpoint slope
    const Eigen::VectorXd mid = Eigen::VectorXd::Constant(32, 11.0 / 48.0);
    CHECK(loss_with_slopes(model, img, 1, mid) == Catch::Approx(e.loss).epsilon(1e-15));

    ModelGradients g = ModelGradients::zeros_like(model);
    const auto e2 = accumulate_gradients(model, img, 1, mid, g);
    CHECK(e2.loss == Catch::Approx(e.loss).epsilon(1e-15));
    CHECK(e2.circuit_runs == 81);
}

TEST_CASE("Gradient accumulation arithmetic", "[model]") {
    Rng rng(9, Stream::Test);
    auto circuit = templates::build_template(TemplateKind::C19, ChannelMode::Single);
    const auto model = HybridModel::init(circuit, 4, 3, 1, rng);
    const auto img = toyImage(4, 1, rng);
    const Eigen::VectorXd slopes = Eigen::VectorXd::Constant(3, 0.2);
    ModelGradients one = ModelGradients::zeros_like(model);
    accumulate_gradients(model, img, 0, slopes, one);
    ModelGradients two = ModelGradients::zeros_like(model);
    accumulate_gradients(model, img, 0, slopes, two);
    accumulate_gradients(model, img, 0, slopes, two);
    two *= 0.5;
    CHECK((two.qparams - one.qparams).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((two.hidden_w - one.hidden_w).cwiseAbs().maxCoeff() < 1e-15);
    two += one;
    CHECK((two.output_b - 2 * one.output_b).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Optimizer steps every block", "[model]") {
    Rng rng(10, Stream::Test);
    auto circuit = templates::build_template(TemplateKind::U1_CRX, ChannelMode::Single);
    auto model = HybridModel::init(circuit, 4, 3, 1, rng);
    const auto before = model;
    ModelOptimizer opt(model, {});
    ModelGradients g = ModelGradients::zeros_like(model);
    accumulate_gradients(model, toyImage(4, 1, rng), 1, Eigen::VectorXd::Constant(3, 0.2), g);
    opt.step(model, g);
    CHECK(opt.steps() == 1);
    CHECK(model.qparams != before.qparams);
    CHECK(model.hidden.weights != before.hidden.weights);
    CHECK(model.output.bias != before.output.bias);
}
