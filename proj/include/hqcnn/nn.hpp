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
 * Classical head: dense layers, randomized leaky ReLU, softmax with
 * cross-entropy, and Adam.
 */
#pragma once

#include "hqcnn/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace hqcnn::nn {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar> struct DenseGrads {
    Matrix<Scalar> dW;
    Vector<Scalar> db;
    Vector<Scalar> dx;
};

/// y = W x + b
template <typename Scalar> struct DenseLayer {
    Matrix<Scalar> weights;
    Vector<Scalar> bias;

    DenseLayer() = default;
    DenseLayer(Matrix<Scalar> w, Vector<Scalar> b)
        : weights(std::move(w)), bias(std::move(b)) {
        if (weights.rows() != bias.size()) {
            throw std::invalid_argument("dense: bias length != output width");
        }
    }

    [[nodiscard]] Eigen::Index inputs() const { return weights.cols(); }
    [[nodiscard]] Eigen::Index outputs() const { return weights.rows(); }

    /// Uniform(-1/sqrt(in), 1/sqrt(in)) for weights then bias, row-major.
    static DenseLayer uniform_init(Eigen::Index in, Eigen::Index out, Rng &rng) {
        const Scalar bound = Scalar(1) / std::sqrt(static_cast<Scalar>(in));
        DenseLayer layer(Matrix<Scalar>(out, in), Vector<Scalar>(out));
        for (Eigen::Index r = 0; r < out; ++r) {
            for (Eigen::Index c = 0; c < in; ++c) {
                layer.weights(r, c) = static_cast<Scalar>(rng.uniform(-bound, bound));
            }
        }
        for (Eigen::Index r = 0; r < out; ++r) {
            layer.bias(r) = static_cast<Scalar>(rng.uniform(-bound, bound));
        }
        return layer;
    }
};

template <typename Scalar, typename Derived>
Vector<Scalar> dense_forward(const DenseLayer<Scalar> &layer,
                             const Eigen::MatrixBase<Derived> &x) {
    if (x.size() != layer.inputs()) {
        throw std::invalid_argument("dense_forward: input length " +
                                    std::to_string(x.size()) + " != " +
                                    std::to_string(layer.inputs()));
    }
    return layer.weights * x + layer.bias;
}

template <typename Scalar, typename DerivedX, typename DerivedY>
DenseGrads<Scalar> dense_backward(const DenseLayer<Scalar> &layer,
                                  const Eigen::MatrixBase<DerivedX> &x,
                                  const Eigen::MatrixBase<DerivedY> &dy) {
    if (x.size() != layer.inputs() || dy.size() != layer.outputs()) {
        throw std::invalid_argument("dense_backward: shape mismatch");
    }
    return {dy * x.transpose(), dy, layer.weights.transpose() * dy};
}

enum class Mode { Train, Eval };

template <typename Scalar> struct RReLUBounds {
    Scalar lower = Scalar(1) / Scalar(8);
    Scalar upper = Scalar(1) / Scalar(3);
    [[nodiscard]] Scalar midpoint() const { return (lower + upper) / Scalar(2); }
};

template <typename Scalar> struct RReLUResult {
    Vector<Scalar> y;
    /// Effective slope dy/dx per element (1 where x >= 0).
    Vector<Scalar> slopes;
};

/// Draws one negative-side slope per element in train mode.
template <typename Scalar>
Vector<Scalar> rrelu_sample_slopes(Eigen::Index n, Rng &rng,
                                   const RReLUBounds<Scalar> &bounds = {}) {
    Vector<Scalar> a(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i) = static_cast<Scalar>(rng.uniform(bounds.lower, bounds.upper));
    }
    return a;
}

/// Applies fixed negative-side slopes.
template <typename Scalar>
RReLUResult<Scalar> rrelu_apply(const Vector<Scalar> &x,
                                const Vector<Scalar> &negative_slopes) {
    if (x.size() != negative_slopes.size()) {
        throw std::invalid_argument("rrelu: slope count mismatch");
    }
    RReLUResult<Scalar> r;
    r.slopes = (x.array() >= Scalar(0)).select(Vector<Scalar>::Ones(x.size()),
                                               negative_slopes);
    r.y = x.cwiseProduct(r.slopes);
    return r;
}

/// Train mode consumes exactly x.size() uniform draws from rng (one per
/// element, regardless of sign); eval mode consumes none.
template <typename Scalar>
RReLUResult<Scalar> rrelu(const Vector<Scalar> &x, Mode mode, Rng &rng,
                          const RReLUBounds<Scalar> &bounds = {}) {
    if (mode == Mode::Train) {
        return rrelu_apply<Scalar>(x, rrelu_sample_slopes<Scalar>(x.size(), rng, bounds));
    }
    return rrelu_apply<Scalar>(x, Vector<Scalar>::Constant(x.size(), bounds.midpoint()));
}

template <typename Scalar>
Vector<Scalar> rrelu_backward(const RReLUResult<Scalar> &fwd,
                              const Vector<Scalar> &dy) {
    return dy.cwiseProduct(fwd.slopes);
}

template <typename Scalar> struct SoftmaxXent {
    Scalar loss;
    Vector<Scalar> probs;
    Vector<Scalar> dlogits;
};

template <typename Derived>
Vector<typename Derived::Scalar> softmax(const Eigen::MatrixBase<Derived> &logits) {
    using Scalar = typename Derived::Scalar;
    const Scalar m = logits.maxCoeff();
    Vector<Scalar> e = (logits.array() - m).exp();
    return e / e.sum();
}

/// loss = -log softmax(logits)[label], evaluated with log-sum-exp.
template <typename Derived>
SoftmaxXent<typename Derived::Scalar>
softmax_xent(const Eigen::MatrixBase<Derived> &logits, int label) {
    using Scalar = typename Derived::Scalar;
    if (label < 0 || label >= logits.size()) {
        throw std::invalid_argument("softmax_xent: label out of range");
    }
    const Scalar m = logits.maxCoeff();
    const Scalar lse = m + std::log((logits.array() - m).exp().sum());
    SoftmaxXent<Scalar> r;
    r.loss = lse - logits(label);
    r.probs = softmax(logits);
    r.dlogits = r.probs;
    r.dlogits(label) -= Scalar(1);
    return r;
}

template <typename Scalar> struct AdamConfig {
    Scalar lr = Scalar(0.01);
    Scalar beta1 = Scalar(0.9);
    Scalar beta2 = Scalar(0.999);
    Scalar epsilon = Scalar(1e-8);
};

/// First/second moments for one flat parameter block.
template <typename Scalar> struct AdamState {
    AdamConfig<Scalar> config;
    Vector<Scalar> m;
    Vector<Scalar> v;
    long step = 0;

    AdamState() = default;
    AdamState(Eigen::Index n, AdamConfig<Scalar> cfg = {})
        : config(cfg), m(Vector<Scalar>::Zero(n)), v(Vector<Scalar>::Zero(n)) {}
};

/**
 * Bias-corrected Adam update in place:
 *   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2
 *   p <- p - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
 */
template <typename Scalar>
void adam_step(AdamState<Scalar> &state, Eigen::Ref<Vector<Scalar>> params,
               const Eigen::Ref<const Vector<Scalar>> &grads) {
    if (params.size() != state.m.size() || grads.size() != params.size()) {
        throw std::invalid_argument("adam_step: shape mismatch");
    }
    const auto &c = state.config;
    ++state.step;
    state.m = c.beta1 * state.m + (Scalar(1) - c.beta1) * grads;
    state.v = c.beta2 * state.v + (Scalar(1) - c.beta2) * grads.cwiseAbs2();
    const Scalar bc1 = Scalar(1) - std::pow(c.beta1, static_cast<Scalar>(state.step));
    const Scalar bc2 = Scalar(1) - std::pow(c.beta2, static_cast<Scalar>(state.step));
    params.array() -= c.lr * (state.m.array() / bc1) /
                      ((state.v.array() / bc2).sqrt() + c.epsilon);
}

/// Flat view of a matrix for adam_step.
template <typename Scalar>
Eigen::Map<Vector<Scalar>> flat(Matrix<Scalar> &m) {
    return {m.data(), m.size()};
}
template <typename Scalar>
Eigen::Map<const Vector<Scalar>> flat(const Matrix<Scalar> &m) {
    return {m.data(), m.size()};
}

} // namespace hqcnn::nn
