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
 * The hybrid classifier:
 *
 *     angles -> qconv (one kernel) -> flatten (row-major)
 *            -> dense(F -> hidden) -> RReLU -> dense(hidden -> 2) -> softmax
 */
#pragma once

#include "hqcnn/image.hpp"
#include "hqcnn/nn.hpp"
#include "hqcnn/qsim/circuit.hpp"
#include "hqcnn/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace hqcnn::harness {

struct HybridModel {
    qsim::CircuitTemplate circuit;
    Eigen::VectorXd qparams;
    nn::DenseLayer<double> hidden;
    nn::DenseLayer<double> output;
    std::size_t stride = 1;

    /// Quantum parameters ~ U[0, 2 pi), then hidden and output layers with
    /// U(-1/sqrt(fan_in), 1/sqrt(fan_in)), all drawn from `rng` in that order.
    static HybridModel init(qsim::CircuitTemplate circuit,
                            std::size_t image_side, std::size_t hidden_width,
                            std::size_t stride, Rng &rng);

    [[nodiscard]] std::size_t featureCount() const {
        return static_cast<std::size_t>(hidden.inputs());
    }
    [[nodiscard]] std::size_t parameterCount() const;
};

struct ModelGradients {
    Eigen::VectorXd qparams;
    nn::Matrix<double> hidden_w;
    nn::Vector<double> hidden_b;
    nn::Matrix<double> output_w;
    nn::Vector<double> output_b;

    static ModelGradients zeros_like(const HybridModel &model);
    ModelGradients &operator+=(const ModelGradients &other);
    ModelGradients &operator*=(double s);
};

struct Evaluation {
    double loss = 0.0;
    Eigen::VectorXd probs;
    int predicted = 0;
    std::size_t circuit_runs = 0;
};

/// Eval-mode forward (RReLU at its midpoint slope); no parameter gradients.
Evaluation evaluate(const HybridModel &model, const ImageTensor &image,
                    int label);

/**
 * Forward and backward through the whole model for one example with the
 * given RReLU negative-side slopes (one per hidden unit). Gradients are
 * added into `grads`.
 */
Evaluation accumulate_gradients(const HybridModel &model,
                                const ImageTensor &image, int label,
                                const Eigen::VectorXd &negative_slopes,
                                ModelGradients &grads);

/// Loss only, same slopes; the finite-difference oracle for the above.
double loss_with_slopes(const HybridModel &model, const ImageTensor &image,
                        int label, const Eigen::VectorXd &negative_slopes);

/// Adam state for every parameter block.
struct ModelOptimizer {
    nn::AdamState<double> qparams, hidden_w, hidden_b, output_w, output_b;

    ModelOptimizer(const HybridModel &model, nn::AdamConfig<double> config);
    void step(HybridModel &model, const ModelGradients &grads);
    [[nodiscard]] long steps() const { return qparams.step; }
};

} // namespace hqcnn::harness
