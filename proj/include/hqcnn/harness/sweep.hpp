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
 * Channel x template accuracy grid.
 *
 * Rows are the nine single channels (R G B, L A B, Y Cb Cr) followed by the
 * three full-channel rows (RGB, LAB, YCbCr); columns are the eight filter
 * kinds. Each cell trains `repeats` models with seeds base_seed + r.
 *
 * Layout of <output_dir>/sweep/:
 *   cells/<row>__<template>.json   one finished cell (resume key)
 *   table.csv                      12 x 8 mean accuracies
 *   cells.csv                      one line per cell with seeds, std,
 *                                  runtime, status and reference value
 */
#pragma once

#include "hqcnn/harness/config.hpp"
#include "hqcnn/harness/train.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hqcnn::harness {

struct SweepRow {
    /// Table label; the LAB blue-yellow row is "B(LAB)" to stay unique.
    std::string label;
    colorspace::Target space;
    int channel;
};

/// The 12 rows in table order.
const std::vector<SweepRow> &sweep_rows();
std::optional<SweepRow> find_row(std::string_view label);

/// Reference accuracy recorded beside a cell, when one exists.
std::optional<double> reference_accuracy(const SweepRow &row,
                                         templates::TemplateKind kind);

struct SweepCell {
    SweepRow row;
    templates::TemplateKind kind;
};

struct SweepCellResult {
    SweepCell cell;
    std::vector<std::uint64_t> seeds;
    std::vector<double> accuracies;
    double mean = 0.0;
    double stddev = 0.0;
    double runtime_seconds = 0.0;
    bool ok = false;
    /// Loaded from an earlier run instead of recomputed.
    bool resumed = false;
    /// The failure was missing or malformed input data.
    bool data_error = false;
    std::string error;
};

struct SweepSummary {
    std::vector<SweepCellResult> cells;
    std::size_t computed = 0;
    std::size_t resumed = 0;
    std::size_t failed = 0;
};

/// All 96 cells, or the cross product of the given row labels and kinds.
std::vector<SweepCell> sweep_grid(const std::vector<std::string> &row_labels = {},
                                  const std::vector<templates::TemplateKind> &kinds = {});

/**
 * Runs every cell that has no finished result file under
 * <output_dir>/sweep/cells, with up to config.jobs cells in flight. Cell
 * failures are recorded and the sweep continues.
 */
SweepSummary sweep(const ExperimentConfig &base,
                   const std::vector<SweepCell> &grid, DataSource &source);

std::filesystem::path sweep_directory(const ExperimentConfig &base);

} // namespace hqcnn::harness
