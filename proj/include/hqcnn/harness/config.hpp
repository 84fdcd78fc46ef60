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
 * Experiment configuration.
 *
 * File format: one `key = value` per line, `#` starts a comment. Keys:
 *
 *     color_space      RGB | LAB | YCBCR                    (LAB)
 *     channel          0 | 1 | 2 | all, or a channel letter
 *                      (R G B / L A B / Y Cb Cr)            (0)
 *     template         U1_CRX ... C19                       (C14)
 *     seed             unsigned integer                     (0)
 *     epochs                                                (20)
 *     batch_size                                            (50)
 *     learning_rate                                         (0.01)
 *     hidden_width                                          (32)
 *     stride                                                (1)
 *     image_size       side after resizing                  (10)
 *     trainable_cphase true | false                         (false)
 *     repeats          seeds per sweep cell                 (1)
 *     jobs             concurrent sweep cells               (1)
 *     classes          two CIFAR-10 class indices           (0,1)
 *     train_per_class                                       (500)
 *     test_per_class                                        (100)
 *     data_dir         CIFAR-10 binary directory
 *     output_dir       run/sweep output root                (runs)
 *     cache_dir        preprocessed cache directory         (<output_dir>/cache)
 *     plot             also write a gnuplot script          (false)
 *
 * Precedence: defaults < file < HQCNN_DATA_DIR (data_dir only) < flags.
 */
#pragma once

#include "hqcnn/colorspace.hpp"
#include "hqcnn/templates.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hqcnn::harness {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Channel selector; kAllChannels selects channel-overwrite mode.
inline constexpr int kAllChannels = -1;

inline constexpr const char *kDataDirEnv = "HQCNN_DATA_DIR";

struct ExperimentConfig {
    colorspace::Target color_space = colorspace::Target::LAB;
    int channel = 0;
    templates::TemplateKind template_kind = templates::TemplateKind::C14;
    std::uint64_t seed = 0;
    std::size_t epochs = 20;
    std::size_t batch_size = 50;
    double learning_rate = 0.01;
    std::size_t hidden_width = 32;
    std::size_t stride = 1;
    std::size_t image_size = 10;
    bool trainable_cphase = false;
    std::size_t repeats = 1;
    std::size_t jobs = 1;
    std::array<std::uint8_t, 2> classes{0, 1};
    std::size_t train_per_class = 500;
    std::size_t test_per_class = 100;
    std::filesystem::path data_dir = "cifar-10-batches-bin";
    std::filesystem::path output_dir = "runs";
    std::filesystem::path cache_dir;
    bool plot = false;

    [[nodiscard]] templates::ChannelMode mode() const {
        return channel == kAllChannels ? templates::ChannelMode::ChannelOverwrite
                                       : templates::ChannelMode::Single;
    }
    [[nodiscard]] std::filesystem::path effectiveCacheDir() const {
        return cache_dir.empty() ? output_dir / "cache" : cache_dir;
    }
};

/// Applies one key/value; throws ConfigError on unknown keys or bad values.
void set_field(ExperimentConfig &cfg, std::string_view key,
               std::string_view value);

ExperimentConfig parse_config_text(std::string_view text,
                                   ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::filesystem::path &file,
                                  ExperimentConfig base = {});

/// Round-trippable `key = value` text.
std::string to_text(const ExperimentConfig &cfg);

/// Throws ConfigError when a field is out of its domain.
void validate(const ExperimentConfig &cfg);

std::optional<colorspace::Target> parse_target(std::string_view name);
/// "0" | "1" | "2" | "all" | channel letter for `space`.
std::optional<int> parse_channel(std::string_view name, colorspace::Target space);
/// "L", "Cb", "RGB", ... as used in result tables.
std::string channel_label(colorspace::Target space, int channel);

/// <space>_<channel>_<template>_s<seed>
std::string run_name(const ExperimentConfig &cfg);

} // namespace hqcnn::harness
