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
#include "hqcnn/harness/model.hpp"

#include "hqcnn/qconv.hpp"

#include <numbers>

namespace hqcnn::harness {

namespace {

std::span<const double> span(const Eigen::VectorXd &v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

/// Row-major flatten of the feature map.
Eigen::VectorXd flatten(const qconv::FeatureMap &m) {
    Eigen::VectorXd v(m.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(k++) = m(i, j);
        }
    }
    return v;
}

struct HeadForward {
    Eigen::VectorXd features, pre, logits;
    nn::RReLUResult<double> act;
    nn::SoftmaxXent<double> xent;
};

HeadForward head(const HybridModel &model, Eigen::VectorXd features,
                 int label, const Eigen::VectorXd &negative_slopes) {
    HeadForward f;
    f.features = std::move(features);
    f.pre = nn::dense_forward(model.hidden, f.features);
    f.act = nn::rrelu_apply<double>(f.pre, negative_slopes);
    f.logits = nn::dense_forward(model.output, f.act.y);
    f.xent = nn::softmax_xent(f.logits, label);
    return f;
}

Evaluation summarize(const HeadForward &f, std::size_t runs) {
    Evaluation e;
    e.loss = f.xent.loss;
    e.probs = f.xent.probs;
    Eigen::Index arg = 0;
    f.xent.probs.maxCoeff(&arg);
    e.predicted = static_cast<int>(arg);
    e.circuit_runs = runs;
    return e;
}

} // namespace

HybridModel HybridModel::init(qsim::CircuitTemplate circuit,
                              std::size_t image_side, std::size_t hidden_width,
                              std::size_t stride, Rng &rng) {
    HybridModel m;
    m.stride = stride;
    m.qparams.resize(static_cast<Eigen::Index>(circuit.n_trainable));
    for (auto &p : m.qparams) {
        p = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const auto side = qconv::output_extent(image_side, stride);
    const auto features = static_cast<Eigen::Index>(side * side);
    m.hidden = nn::DenseLayer<double>::uniform_init(
        features, static_cast<Eigen::Index>(hidden_width), rng);
    m.output = nn::DenseLayer<double>::uniform_init(
        static_cast<Eigen::Index>(hidden_width), 2, rng);
    m.circuit = std::move(circuit);
    return m;
}

std::size_t HybridModel::parameterCount() const {
    return static_cast<std::size_t>(qparams.size() + hidden.weights.size() +
                                    hidden.bias.size() + output.weights.size() +
                                    output.bias.size());
}

ModelGradients ModelGradients::zeros_like(const HybridModel &model) {
    return {Eigen::VectorXd::Zero(model.qparams.size()),
            nn::Matrix<double>::Zero(model.hidden.weights.rows(),
                                     model.hidden.weights.cols()),
            nn::Vector<double>::Zero(model.hidden.bias.size()),
            nn::Matrix<double>::Zero(model.output.weights.rows(),
                                     model.output.weights.cols()),
            nn::Vector<double>::Zero(model.output.bias.size())};
}

ModelGradients &ModelGradients::operator+=(const ModelGradients &o) {
    qparams += o.qparams;
    hidden_w += o.hidden_w;
    hidden_b += o.hidden_b;
    output_w += o.output_w;
    output_b += o.output_b;
    return *this;
}

ModelGradients &ModelGradients::operator*=(double s) {
    qparams *= s;
    hidden_w *= s;
    hidden_b *= s;
    output_w *= s;
    output_b *= s;
    return *this;
}

Evaluation evaluate(const HybridModel &model, const ImageTensor &image,
                    int label) {
    const auto fm = qconv::qconv_forward(image, model.circuit, span(model.qparams),
                                         model.stride);
    const nn::RReLUBounds<double> bounds;
    const auto f = head(model, flatten(fm), label,
                        Eigen::VectorXd::Constant(model.hidden.outputs(),
                                                  bounds.midpoint()));
    return summarize(f, static_cast<std::size_t>(fm.size()));
}

double loss_with_slopes(const HybridModel &model, const ImageTensor &image,
                        int label, const Eigen::VectorXd &negative_slopes) {
    const auto fm = qconv::qconv_forward(image, model.circuit, span(model.qparams),
                                         model.stride);
    return head(model, flatten(fm), label, negative_slopes).xent.loss;
}

Evaluation accumulate_gradients(const HybridModel &model,
                                const ImageTensor &image, int label,
                                const Eigen::VectorXd &negative_slopes,
                                ModelGradients &grads) {
    const auto q = qconv::qconv_forward_jacobian(image, model.circuit,
                                                 span(model.qparams), model.stride);
    const HeadForward f = head(model, flatten(q.map), label, negative_slopes);

    const auto g_out = nn::dense_backward(model.output, f.act.y, f.xent.dlogits);
    const Eigen::VectorXd d_pre = nn::rrelu_backward(f.act, g_out.dx);
    const auto g_hid = nn::dense_backward(model.hidden, f.features, d_pre);

    grads.output_w += g_out.dW;
    grads.output_b += g_out.db;
    grads.hidden_w += g_hid.dW;
    grads.hidden_b += g_hid.db;
    // d(loss)/d(theta) = J^T d(loss)/d(features); J rows follow the flatten order.
    grads.qparams += q.jacobian.transpose() * g_hid.dx;
    return summarize(f, q.circuit_runs);
}

ModelOptimizer::ModelOptimizer(const HybridModel &model,
                               nn::AdamConfig<double> config)
    : qparams(model.qparams.size(), config),
      hidden_w(model.hidden.weights.size(), config),
      hidden_b(model.hidden.bias.size(), config),
      output_w(model.output.weights.size(), config),
      output_b(model.output.bias.size(), config) {}

void ModelOptimizer::step(HybridModel &model, const ModelGradients &g) {
    nn::adam_step<double>(qparams, model.qparams, g.qparams);
    nn::adam_step<double>(hidden_w, nn::flat(model.hidden.weights), nn::flat(g.hidden_w));
    nn::adam_step<double>(hidden_b, model.hidden.bias, g.hidden_b);
    nn::adam_step<double>(output_w, nn::flat(model.output.weights), nn::flat(g.output_w));
    nn::adam_step<double>(output_b, model.output.bias, g.output_b);
}

} // namespace hqcnn::harness
