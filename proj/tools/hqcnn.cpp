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
//
// Command-line front end.
//
//   hqcnn prepare-data [--all-spaces] [config flags]
//   hqcnn train        [config flags]
//   hqcnn sweep        [--rows R,L,...] [--templates C14,...] [config flags]
//   hqcnn gradcheck    --template C14 [--mode single|co] [--trials 100]
//   hqcnn selftest     [--trials 100]
//   hqcnn templates    [--show NAME]
//
// Config flags: --config FILE plus one --<key> per config key (dashes for
// underscores). Precedence: defaults < file < HQCNN_DATA_DIR < flags.
//
// Exit codes: 0 success, 1 usage or config error, 2 data error,
// 3 numerical check failure.

#include "hqcnn/harness/checks.hpp"
#include "hqcnn/harness/config.hpp"
#include "hqcnn/harness/sweep.hpp"
#include "hqcnn/harness/train.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>

namespace {

namespace fs = std::filesystem;
using namespace hqcnn;
using harness::ExperimentConfig;

enum Exit : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

constexpr const char *kConfigKeys[] = {
    "color_space",   "channel",         "template",      "seed",
    "epochs",        "batch_size",      "learning_rate", "hidden_width",
    "stride",        "image_size",      "trainable_cphase", "repeats",
    "jobs",          "classes",         "train_per_class", "test_per_class",
    "data_dir",      "output_dir",      "cache_dir",     "plot"};

/// Config-file path plus one string per key, filled by CLI11.
struct ConfigFlags {
    std::string file;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option *> options;
};

void add_config_flags(CLI::App &app, ConfigFlags &flags) {
    app.add_option("--config", flags.file, "key = value config file")
        ->check(CLI::ExistingFile);
    for (const char *key : kConfigKeys) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        flags.options[key] =
            app.add_option("--" + flag, flags.values[key], std::string("config key ") + key);
    }
}

ExperimentConfig resolve_config(const ConfigFlags &flags) {
    ExperimentConfig cfg;
    if (!flags.file.empty()) {
        cfg = harness::load_config_file(flags.file, cfg);
    }
    if (const char *env = std::getenv(harness::kDataDirEnv); env && *env) {
        cfg.data_dir = env;
    }
    // color_space first so channel letters resolve against the final space
    if (flags.options.at("color_space")->count() > 0) {
        harness::set_field(cfg, "color_space", flags.values.at("color_space"));
    }
    for (const char *key : kConfigKeys) {
        if (std::string_view(key) != "color_space" && flags.options.at(key)->count() > 0) {
            harness::set_field(cfg, key, flags.values.at(key));
        }
    }
    harness::validate(cfg);
    return cfg;
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

data::SplitConfig split_of(const ExperimentConfig &cfg) {
    return {cfg.classes, cfg.train_per_class, cfg.test_per_class};
}

int cmd_prepare_data(const ExperimentConfig &cfg, bool all_spaces) {
    auto source = harness::DataSource::from_directory(cfg.data_dir, cfg.effectiveCacheDir());
    std::vector<colorspace::Target> targets{cfg.color_space};
    if (all_spaces) {
        targets = {colorspace::Target::RGB, colorspace::Target::LAB,
                   colorspace::Target::YCBCR};
    }
    for (auto target : targets) {
        const auto prepared = source->get(target, cfg.seed, cfg.image_size, split_of(cfg));
        std::printf("%s seed %llu: %zu train, %zu test images cached in %s\n",
                    std::string(data::to_string(target)).c_str(),
                    static_cast<unsigned long long>(cfg.seed), prepared.train.size(),
                    prepared.test.size(), cfg.effectiveCacheDir().string().c_str());
    }
    return kOk;
}

int cmd_train(const ExperimentConfig &cfg) {
    auto source = harness::DataSource::from_directory(cfg.data_dir, cfg.effectiveCacheDir());
    const auto m = harness::train_run(cfg, *source);
    std::printf("run %s\n", harness::run_name(cfg).c_str());
    std::printf("%5s %10s %9s %10s %9s\n", "epoch", "train_loss", "train_acc",
                "test_loss", "test_acc");
    for (const auto &e : m.epochs) {
        std::printf("%5zu %10.4f %9.4f %10.4f %9.4f\n", e.epoch, e.train_loss,
                    e.train_acc, e.test_loss, e.test_acc);
    }
    std::printf("final test accuracy %.4f (%zu test images, %zu steps, %.1f s)\n",
                m.final_test_accuracy, m.test_size, m.optimizer_steps, m.wall_seconds);
    std::printf("outputs in %s\n", harness::run_directory(cfg).string().c_str());
    return kOk;
}

int cmd_sweep(const ExperimentConfig &cfg, const std::string &rows,
              const std::string &kinds_text) {
    const auto row_labels = split_list(rows);
    for (const auto &label : row_labels) {
        if (!harness::find_row(label)) {
            throw harness::ConfigError("unknown sweep row '" + label + "'");
        }
    }
    std::vector<templates::TemplateKind> kinds;
    for (const auto &name : split_list(kinds_text)) {
        const auto kind = templates::parse_kind(name);
        if (!kind) throw harness::ConfigError("unknown template '" + name + "'");
        kinds.push_back(*kind);
    }
    const auto grid = harness::sweep_grid(row_labels, kinds);
    auto source = harness::DataSource::from_directory(cfg.data_dir, cfg.effectiveCacheDir());
    const auto summary = harness::sweep(cfg, grid, *source);

    bool any_data_error = false;
    for (const auto &c : summary.cells) {
        const auto ref = harness::reference_accuracy(c.cell.row, c.cell.kind);
        const std::string ref_text = ref ? " (reference " + std::to_string(*ref).substr(0, 5) + ")" : "";
        if (c.ok) {
            std::printf("%-7s %-8s %.4f +- %.4f%s%s\n", c.cell.row.label.c_str(),
                        std::string(templates::to_string(c.cell.kind)).c_str(), c.mean,
                        c.stddev, ref_text.c_str(), c.resumed ? " [resumed]" : "");
        } else {
            any_data_error = any_data_error || c.data_error;
            std::printf("%-7s %-8s FAILED: %s\n", c.cell.row.label.c_str(),
                        std::string(templates::to_string(c.cell.kind)).c_str(),
                        c.error.c_str());
        }
    }
    std::printf("%zu cells: %zu computed, %zu resumed, %zu failed; table in %s\n",
                summary.cells.size(), summary.computed, summary.resumed, summary.failed,
                harness::sweep_directory(cfg).string().c_str());
    if (summary.failed == 0) return kOk;
    return any_data_error ? kData : kUsage;
}

int cmd_gradcheck(const std::string &name, const std::string &mode_name,
                  std::size_t trials, std::uint64_t seed, bool trainable_cphase) {
    const auto kind = templates::parse_kind(name);
    if (!kind) throw harness::ConfigError("unknown template '" + name + "'");
    const auto mode = templates::parse_mode(mode_name);
    if (!mode) throw harness::ConfigError("unknown channel mode '" + mode_name + "'");
    const auto tmpl = templates::build_template(*kind, *mode, {trainable_cphase});
    const auto rep = harness::gradcheck(tmpl, trials, seed);
    std::printf("%s: %zu trials, step %.0e, tolerance %.0e\n", rep.template_name.c_str(),
                rep.trials, harness::kFiniteDifferenceStep, harness::kGradientTolerance);
    for (std::size_t k = 0; k < rep.per_parameter.size(); ++k) {
        std::printf("  param %2zu  max rel err %.3e\n", k, rep.per_parameter[k]);
    }
    std::printf("max relative error %.3e: %s\n", rep.max_relative_error,
                rep.passed ? "PASS" : "FAIL");
    return rep.passed ? kOk : kNumeric;
}

int cmd_selftest(std::size_t trials, std::uint64_t seed) {
    bool ok = true;
    for (const auto &line : harness::run_selftest(trials, seed)) {
        std::printf("%s  %-36s %s\n", line.passed ? "PASS" : "FAIL", line.name.c_str(),
                    line.detail.c_str());
        ok = ok && line.passed;
    }
    return ok ? kOk : kNumeric;
}

int cmd_templates(const std::string &show, const std::string &mode_name,
                  bool trainable_cphase) {
    if (show.empty()) {
        for (const auto &id : templates::list_templates()) {
            const auto t = templates::build_template(id.kind, id.mode);
            std::printf("%-14s %-6s %zu qubits, %zu trainable, %zu encodings, %zu gates\n",
                        std::string(templates::to_string(id.kind)).c_str(),
                        std::string(templates::to_string(id.mode)).c_str(), t.n_qubits,
                        t.n_trainable, t.n_encoding, t.gates.size());
        }
        return kOk;
    }
    const auto kind = templates::parse_kind(show);
    if (!kind) throw harness::ConfigError("unknown template '" + show + "'");
    const auto mode = templates::parse_mode(mode_name);
    if (!mode) throw harness::ConfigError("unknown channel mode '" + mode_name + "'");
    std::cout << templates::to_text(templates::build_template(*kind, *mode, {trainable_cphase}));
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hybrid quanvolutional network experiments"};
    app.require_subcommand(1);

    ConfigFlags prepare_flags, train_flags, sweep_flags;
    bool all_spaces = false;
    auto *prepare = app.add_subcommand("prepare-data", "build preprocessed dataset caches");
    add_config_flags(*prepare, prepare_flags);
    prepare->add_flag("--all-spaces", all_spaces, "cache RGB, LAB and YCBCR");

    auto *train = app.add_subcommand("train", "train and evaluate one model");
    add_config_flags(*train, train_flags);

    std::string rows, kinds;
    auto *sweep = app.add_subcommand("sweep", "color space x template accuracy grid");
    add_config_flags(*sweep, sweep_flags);
    sweep->add_option("--rows", rows, "comma-separated row labels (default all 12)");
    sweep->add_option("--templates", kinds, "comma-separated templates (default all 8)");

    std::string gc_template, gc_mode = "single";
    std::size_t gc_trials = 100;
    std::uint64_t gc_seed = 0;
    bool gc_cphase = false;
    auto *gradcheck = app.add_subcommand("gradcheck", "adjoint vs finite-difference gradients");
    gradcheck->add_option("--template", gc_template, "template name")->required();
    gradcheck->add_option("--mode", gc_mode, "single | co");
    gradcheck->add_option("--trials", gc_trials, "random parameter draws");
    gradcheck->add_option("--seed", gc_seed, "draw seed");
    gradcheck->add_flag("--trainable-cphase", gc_cphase, "trainable fan-in angles");

    std::size_t st_trials = 100;
    std::uint64_t st_seed = 0;
    auto *selftest = app.add_subcommand("selftest", "simulator, gradient and color checks");
    selftest->add_option("--trials", st_trials, "gradient draws per template");
    selftest->add_option("--seed", st_seed, "draw seed");

    std::string show, show_mode = "single";
    bool show_cphase = false;
    auto *listing = app.add_subcommand("templates", "list templates or print one");
    listing->add_option("--show", show, "template to print in text form");
    listing->add_option("--mode", show_mode, "single | co");
    listing->add_flag("--trainable-cphase", show_cphase, "trainable fan-in angles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*prepare) return cmd_prepare_data(resolve_config(prepare_flags), all_spaces);
        if (*train) return cmd_train(resolve_config(train_flags));
        if (*sweep) return cmd_sweep(resolve_config(sweep_flags), rows, kinds);
        if (*gradcheck) {
            return cmd_gradcheck(gc_template, gc_mode, gc_trials, gc_seed, gc_cphase);
        }
        if (*selftest) return cmd_selftest(st_trials, st_seed);
        if (*listing) return cmd_templates(show, show_mode, show_cphase);
    } catch (const harness::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsage;
    } catch (const data::DataError &e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kData;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
