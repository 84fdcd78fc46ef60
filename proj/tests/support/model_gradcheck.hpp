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

#include "hqcnn/harness/checks.hpp"
#include "hqcnn/harness/model.hpp"
#include "hqcnn/templates.hpp"

#include <algorithm>
#include <numbers>

namespace hqcnn::testing {

inline ImageTensor toy_image(std::size_t side, std::size_t channels, Rng &rng) {
    constexpr double kPi = std::numbers::pi;
    ImageTensor img(ColorSpace::ANGLES, side, side, channels);
    for (auto &ch : img.channels)
        for (auto &v : ch.reshaped()) v = rng.uniform(-kPi, kPi);
    return img;
}

/// Visits every trainable scalar of the model together with its gradient.
template <typename F>
void for_each_parameter(harness::HybridModel &m, harness::ModelGradients &g, F f) {
    for (Eigen::Index k = 0; k < m.qparams.size(); ++k) f(m.qparams(k), g.qparams(k));
    for (Eigen::Index k = 0; k < m.hidden.weights.size(); ++k)
        f(m.hidden.weights.data()[k], g.hidden_w.data()[k]);
    for (Eigen::Index k = 0; k < m.hidden.bias.size(); ++k) f(m.hidden.bias(k), g.hidden_b(k));
    for (Eigen::Index k = 0; k < m.output.weights.size(); ++k)
        f(m.output.weights.data()[k], g.output_w.data()[k]);
    for (Eigen::Index k = 0; k < m.output.bias.size(); ++k) f(m.output.bias(k), g.output_b(k));
}

struct ModelGradcheck {
    double worst_relative_error = 0.0;
    std::size_t visited = 0;
    std::size_t parameter_count = 0;
};

/// Whole-model backward pass vs central differences of the loss on a random
/// side x side image, hidden width 6, with one fixed draw of RReLU slopes.
inline ModelGradcheck model_gradcheck(templates::TemplateKind kind, templates::ChannelMode mode,
                                      std::uint64_t seed, std::size_t side = 4,
                                      double h = 1e-5) {
    using namespace harness;
    Rng rng(seed, Stream::Test);
    auto circuit = templates::build_template(kind, mode);
    const std::size_t channels = circuit.n_encoding / 4;
    HybridModel model = HybridModel::init(std::move(circuit), side, 6, 1, rng);
    const auto img = toy_image(side, channels, rng);
    const Eigen::VectorXd slopes = nn::rrelu_sample_slopes<double>(6, rng);
    const int label = static_cast<int>(rng.below(2));

    ModelGradients g = ModelGradients::zeros_like(model);
    accumulate_gradients(model, img, label, slopes, g);

    ModelGradcheck out;
    out.parameter_count = model.parameterCount();
    for_each_parameter(model, g, [&](double &p, double analytic) {
        const double saved = p;
        p = saved + h;
        const double up = loss_with_slopes(model, img, label, slopes);
        p = saved - h;
        const double dn = loss_with_slopes(model, img, label, slopes);
        p = saved;
        out.worst_relative_error =
            std::max(out.worst_relative_error, relative_error(analytic, (up - dn) / (2 * h)));
        ++out.visited;
    });
    return out;
}

} // namespace hqcnn::testing
