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
#include "hqcnn/harness/sweep.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

namespace hqcnn::harness {

namespace fs = std::filesystem;
using templates::TemplateKind;

namespace {

using Target = colorspace::Target;

// Accuracy table, rows in sweep_rows() order, columns in kAllKinds order.
constexpr double kReference[12][8] = {
    {0.591, 0.656, 0.685, 0.665, 0.650, 0.715, 0.695, 0.710}, // R
    {0.716, 0.704, 0.665, 0.690, 0.735, 0.710, 0.700, 0.780}, // G
    {0.715, 0.686, 0.685, 0.700, 0.735, 0.795, 0.735, 0.795}, // B
    {0.654, 0.671, 0.720, 0.715, 0.715, 0.810, 0.735, 0.705}, // L
    {0.507, 0.522, 0.565, 0.565, 0.585, 0.760, 0.765, 0.775}, // A
    {0.615, 0.637, 0.735, 0.735, 0.720, 0.705, 0.705, 0.695}, // B (LAB)
    {0.687, 0.568, 0.685, 0.665, 0.690, 0.715, 0.670, 0.710}, // Y
    {0.548, 0.568, 0.585, 0.590, 0.600, 0.605, 0.595, 0.570}, // Cb
    {0.608, 0.569, 0.620, 0.630, 0.635, 0.675, 0.660, 0.665}, // Cr
    {0.685, 0.680, 0.675, 0.680, 0.755, 0.770, 0.710, 0.725}, // RGB
    {0.720, 0.680, 0.705, 0.690, 0.700, 0.700, 0.735, 0.665}, // LAB
    {0.585, 0.649, 0.590, 0.615, 0.720, 0.740, 0.660, 0.645}, // YCbCr
};

std::size_t rowIndex(const SweepRow &row) {
    const auto &rows = sweep_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].label == row.label) {
            return i;
        }
    }
    throw std::invalid_argument("unknown sweep row " + row.label);
}

std::size_t kindIndex(TemplateKind kind) {
    return static_cast<std::size_t>(kind);
}

std::string cellName(const SweepCell &c) {
    std::string label = c.row.label;
    for (auto &ch : label) {
        if (ch == '(' || ch == ')') ch = '_';
    }
    return label + "__" + std::string(templates::to_string(c.kind));
}

/// Everything that changes a cell's result besides its row and kind.
std::string resumeKey(const ExperimentConfig &c) {
    return "seed=" + std::to_string(c.seed) + ";repeats=" + std::to_string(c.repeats) +
           ";epochs=" + std::to_string(c.epochs) + ";batch=" + std::to_string(c.batch_size) +
           ";lr=" + std::to_string(c.learning_rate) + ";hidden=" + std::to_string(c.hidden_width) +
           ";stride=" + std::to_string(c.stride) + ";size=" + std::to_string(c.image_size) +
           ";cphase=" + std::to_string(c.trainable_cphase) +
           ";classes=" + std::to_string(c.classes[0]) + "," + std::to_string(c.classes[1]) +
           ";n=" + std::to_string(c.train_per_class) + "," + std::to_string(c.test_per_class);
}

void finish(SweepCellResult &r) {
    const double n = static_cast<double>(r.accuracies.size());
    double sum = 0.0;
    for (double a : r.accuracies) sum += a;
    r.mean = sum / n;
    double sq = 0.0;
    for (double a : r.accuracies) sq += (a - r.mean) * (a - r.mean);
    r.stddev = r.accuracies.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
}

std::optional<SweepCellResult> loadCell(const fs::path &file, const SweepCell &cell,
                                        const std::string &key) {
    std::ifstream in(file);
    if (!in) {
        return std::nullopt;
    }
    try {
        nlohmann::json j;
        in >> j;
        if (j.at("key").get<std::string>() != key || !j.at("ok").get<bool>()) {
            return std::nullopt;
        }
        SweepCellResult r;
        r.cell = cell;
        r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        r.accuracies = j.at("accuracies").get<std::vector<double>>();
        r.runtime_seconds = j.at("runtime_seconds").get<double>();
        r.ok = true;
        r.resumed = true;
        finish(r);
        return r;
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

void saveCell(const fs::path &file, const SweepCellResult &r, const std::string &key) {
    nlohmann::json j;
    j["row"] = r.cell.row.label;
    j["template"] = std::string(templates::to_string(r.cell.kind));
    j["key"] = key;
    j["seeds"] = r.seeds;
    j["accuracies"] = r.accuracies;
    j["mean"] = r.mean;
    j["stddev"] = r.stddev;
    j["runtime_seconds"] = r.runtime_seconds;
    j["ok"] = r.ok;
    j["error"] = r.error;
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(2) << '\n';
    }
    fs::rename(tmp, file);
}

SweepCellResult runCell(const ExperimentConfig &base, const SweepCell &cell,
                        DataSource &source, const fs::path &runs_dir) {
    SweepCellResult r;
    r.cell = cell;
    const auto started = std::chrono::steady_clock::now();
    try {
        for (std::size_t k = 0; k < base.repeats; ++k) {
            ExperimentConfig cfg = base;
            cfg.color_space = cell.row.space;
            cfg.channel = cell.row.channel;
            cfg.template_kind = cell.kind;
            cfg.seed = base.seed + k;
            cfg.output_dir = runs_dir;
            const RunMetrics m = train_run(cfg, source);
            r.seeds.push_back(cfg.seed);
            r.accuracies.push_back(m.final_test_accuracy);
        }
        r.ok = true;
        finish(r);
    } catch (const data::DataError &e) {
        r.ok = false;
        r.data_error = true;
        r.error = e.what();
    } catch (const std::exception &e) {
        r.ok = false;
        r.error = e.what();
    }
    r.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
}

std::string fmt(double v, const char *pattern = "%.6g") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

void writeTables(const fs::path &dir, const std::vector<SweepCellResult> &cells) {
    std::map<std::pair<std::size_t, std::size_t>, const SweepCellResult *> byCell;
    for (const auto &c : cells) {
        byCell[{rowIndex(c.cell.row), kindIndex(c.cell.kind)}] = &c;
    }
    {
        std::ofstream out(dir / "table.csv");
        out << "row";
        for (auto k : templates::kAllKinds) out << ',' << templates::to_string(k);
        out << '\n';
        const auto &rows = sweep_rows();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << rows[i].label;
            for (std::size_t k = 0; k < 8; ++k) {
                out << ',';
                auto it = byCell.find({i, k});
                if (it != byCell.end() && it->second->ok) {
                    out << fmt(it->second->mean, "%.4f");
                }
            }
            out << '\n';
        }
    }
    std::ofstream out(dir / "cells.csv");
    out << "row,template,repeats,seeds,mean,stddev,reference,runtime_s,status\n";
    for (const auto &c : cells) {
        std::string seeds;
        for (std::size_t i = 0; i < c.seeds.size(); ++i) {
            seeds += (i ? " " : "") + std::to_string(c.seeds[i]);
        }
        const auto ref = reference_accuracy(c.cell.row, c.cell.kind);
        out << c.cell.row.label << ',' << templates::to_string(c.cell.kind) << ','
            << c.accuracies.size() << ',' << seeds << ','
            << (c.ok ? fmt(c.mean, "%.4f") : "") << ','
            << (c.ok ? fmt(c.stddev, "%.4f") : "") << ','
            << (ref ? fmt(*ref, "%.3f") : "") << ',' << fmt(c.runtime_seconds, "%.1f")
            << ',' << (c.ok ? (c.resumed ? "resumed" : "ok") : "failed") << '\n';
    }
}

} // namespace

const std::vector<SweepRow> &sweep_rows() {
    static const std::vector<SweepRow> rows = {
        {"R", Target::RGB, 0},      {"G", Target::RGB, 1},      {"B", Target::RGB, 2},
        {"L", Target::LAB, 0},      {"A", Target::LAB, 1},      {"B(LAB)", Target::LAB, 2},
        {"Y", Target::YCBCR, 0},    {"Cb", Target::YCBCR, 1},   {"Cr", Target::YCBCR, 2},
        {"RGB", Target::RGB, kAllChannels},
        {"LAB", Target::LAB, kAllChannels},
        {"YCbCr", Target::YCBCR, kAllChannels},
    };
    return rows;
}

std::optional<SweepRow> find_row(std::string_view label) {
    for (const auto &r : sweep_rows()) {
        if (r.label == label) {
            return r;
        }
    }
    return std::nullopt;
}

std::optional<double> reference_accuracy(const SweepRow &row, TemplateKind kind) {
    for (std::size_t i = 0; i < sweep_rows().size(); ++i) {
        const auto &r = sweep_rows()[i];
        if (r.space == row.space && r.channel == row.channel) {
            return kReference[i][kindIndex(kind)];
        }
    }
    return std::nullopt;
}

std::vector<SweepCell> sweep_grid(const std::vector<std::string> &row_labels,
                                  const std::vector<TemplateKind> &kinds) {
    std::vector<SweepRow> rows;
    if (row_labels.empty()) {
        rows = sweep_rows();
    } else {
        for (const auto &l : row_labels) {
            auto r = find_row(l);
            if (!r) {
                throw ConfigError("unknown sweep row '" + l + "'");
            }
            rows.push_back(*r);
        }
    }
    std::vector<TemplateKind> ks(kinds);
    if (ks.empty()) {
        ks.assign(std::begin(templates::kAllKinds), std::end(templates::kAllKinds));
    }
    std::vector<SweepCell> grid;
    for (const auto &r : rows) {
        for (auto k : ks) {
            grid.push_back({r, k});
        }
    }
    return grid;
}

fs::path sweep_directory(const ExperimentConfig &base) {
    return base.output_dir / "sweep";
}

SweepSummary sweep(const ExperimentConfig &base, const std::vector<SweepCell> &grid,
                   DataSource &source) {
    validate(base);
    const fs::path dir = sweep_directory(base);
    const fs::path cells_dir = dir / "cells";
    const fs::path runs_dir = dir / "runs";
    fs::create_directories(cells_dir);
    const std::string key = resumeKey(base);

    SweepSummary summary;
    summary.cells.resize(grid.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (auto done = loadCell(cells_dir / (cellName(grid[i]) + ".json"), grid[i], key)) {
            summary.cells[i] = std::move(*done);
        } else {
            todo.push_back(i);
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < todo.size(); t = next++) {
            const std::size_t i = todo[t];
            SweepCellResult r = runCell(base, grid[i], source, runs_dir);
            if (r.ok) {
                saveCell(cells_dir / (cellName(grid[i]) + ".json"), r, key);
            }
            summary.cells[i] = std::move(r);
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t n = std::min(base.jobs, std::max<std::size_t>(todo.size(), 1));
        for (std::size_t w = 0; w < n; ++w) {
            pool.emplace_back(worker);
        }
    }

    for (const auto &c : summary.cells) {
        if (!c.ok) {
            ++summary.failed;
        } else if (c.resumed) {
            ++summary.resumed;
        } else {
            ++summary.computed;
        }
    }
    writeTables(dir, summary.cells);
    return summary;
}

} // namespace hqcnn::harness
