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

#include "hqcnn/data.hpp"
#include "hqcnn/harness/config.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace hqcnn::harness {

struct EpochMetrics {
    std::size_t epoch = 0;
    double train_loss = 0.0;
    double train_acc = 0.0;
    double test_loss = 0.0;
    double test_acc = 0.0;
};

struct RunMetrics {
    ExperimentConfig config;
    std::vector<EpochMetrics> epochs;
    /// Test accuracy after the last epoch (or of the untrained model when
    /// epochs == 0).
    double final_test_accuracy = 0.0;
    double final_test_loss = 0.0;
    double wall_seconds = 0.0;
    std::size_t optimizer_steps = 0;
    /// Circuit evaluations in one forward pass over one image.
    std::size_t circuit_evals_per_image = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

/// Preprocessed (ANGLES, all three channels) train/test pair.
struct PreparedData {
    data::Dataset train;
    data::Dataset test;
};

/**
 * Supplies preprocessed splits keyed by (color space, seed, size), reading
 * and writing the on-disk cache when a cache directory is set. Raw CIFAR-10
 * is loaded at most once. Thread-safe.
 */
class DataSource {
  public:
    static std::shared_ptr<DataSource>
    from_directory(std::filesystem::path data_dir,
                   std::filesystem::path cache_dir = {});
    static std::shared_ptr<DataSource>
    from_raw(data::CifarRaw raw, std::filesystem::path cache_dir = {});

    PreparedData get(colorspace::Target target, std::uint64_t seed,
                     std::size_t side, const data::SplitConfig &split);

  private:
    DataSource() = default;
    const data::CifarRaw &raw();

    std::mutex mutex_;
    std::filesystem::path data_dir_;
    std::filesystem::path cache_dir_;
    std::optional<data::CifarRaw> raw_;
};

/// Trains and evaluates on already prepared data. Deterministic in
/// (config, data).
RunMetrics train_on(const ExperimentConfig &config, const PreparedData &data);

/// Prepares data through `source`, trains, and writes
/// <output_dir>/<run_name>/{metrics.csv, summary.json, config.txt}.
RunMetrics train_run(const ExperimentConfig &config, DataSource &source);

std::filesystem::path run_directory(const ExperimentConfig &config);

/// epoch,train_loss,train_acc,test_loss,test_acc with %.17g values.
std::string metrics_csv(const RunMetrics &metrics);
void write_run_outputs(const RunMetrics &metrics,
                       const std::filesystem::path &dir);

} // namespace hqcnn::harness
