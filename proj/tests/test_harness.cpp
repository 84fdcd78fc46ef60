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
#include "hqcnn/harness/config.hpp"
#include "hqcnn/harness/sweep.hpp"
#include "hqcnn/harness/train.hpp"
#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace hqcnn;
using namespace hqcnn::harness;
using templates::TemplateKind;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &file) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tinyConfig(const fs::path &out) {
    ExperimentConfig cfg;
    cfg.epochs = 2;
    cfg.batch_size = 8;
    cfg.hidden_width = 6;
    cfg.image_size = 5;
    cfg.train_per_class = 12;
    cfg.test_per_class = 6;
    cfg.output_dir = out;
    return cfg;
}

} // namespace

TEST_CASE("Config defaults", "[config]") {
    const ExperimentConfig cfg;
    CHECK(cfg.epochs == 20);
    CHECK(cfg.batch_size == 50);
    CHECK(cfg.learning_rate == 0.01);
    CHECK(cfg.hidden_width == 32);
    CHECK(cfg.stride == 1);
    CHECK(cfg.image_size == 10);
    CHECK(cfg.train_per_class == 500);
    CHECK(cfg.test_per_class == 100);
    CHECK_FALSE(cfg.trainable_cphase);
    CHECK(cfg.mode() == templates::ChannelMode::Single);
    CHECK(cfg.effectiveCacheDir() == fs::path("runs") / "cache");
}

TEST_CASE("Config parsing", "[config]") {
    SECTION("keys, comments and channel letters") {
        const auto cfg = parse_config_text(
            "# experiment\n"
            "channel = Cb   # letter resolves after color_space\n"
            "color_space = ycbcr\n"
            "template = u1_crx\n"
            "seed = 12\n"
            "epochs = 3\n"
            "learning_rate = 0.005\n"
            "trainable_cphase = true\n"
            "classes = 3, 5\n"
            "\n"
            "data_dir = /tmp/cifar\n");
        CHECK(cfg.color_space == colorspace::Target::YCBCR);
        CHECK(cfg.channel == 1);
        CHECK(cfg.template_kind == TemplateKind::U1_CRX);
        CHECK(cfg.seed == 12);
        CHECK(cfg.epochs == 3);
        CHECK(cfg.learning_rate == 0.005);
        CHECK(cfg.trainable_cphase);
        CHECK(cfg.classes == std::array<std::uint8_t, 2>{3, 5});
        CHECK(cfg.data_dir == "/tmp/cifar");
    }
    SECTION("all channels selects channel overwrite") {
        const auto cfg = parse_config_text("channel = all\n");
        CHECK(cfg.channel == kAllChannels);
        CHECK(cfg.mode() == templates::ChannelMode::ChannelOverwrite);
    }
    SECTION("letters per space") {
        CHECK(parse_channel("R", colorspace::Target::RGB) == 0);
        CHECK(parse_channel("b", colorspace::Target::RGB) == 2);
        CHECK(parse_channel("L", colorspace::Target::LAB) == 0);
        CHECK(parse_channel("A", colorspace::Target::LAB) == 1);
        CHECK(parse_channel("B", colorspace::Target::LAB) == 2);
        CHECK(parse_channel("Y", colorspace::Target::YCBCR) == 0);
        CHECK(parse_channel("cr", colorspace::Target::YCBCR) == 2);
        CHECK_FALSE(parse_channel("Cb", colorspace::Target::RGB).has_value());
        CHECK_FALSE(parse_channel("3", colorspace::Target::RGB).has_value());
    }
    SECTION("round trip through text") {
        auto cfg = parse_config_text("color_space = LAB\nchannel = all\nseed = 99\nplot = true\n");
        cfg.cache_dir = "/tmp/c";
        const auto again = parse_config_text(to_text(cfg));
        CHECK(to_text(again) == to_text(cfg));
        CHECK(again.channel == kAllChannels);
        CHECK(again.plot);
    }
    SECTION("errors") {
        CHECK_THROWS_AS(parse_config_text("colour = LAB\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("template = C15\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("epochs = many\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("epochs = -1\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
        CHECK_THROWS_AS(parse_config_text("classes = 1\n"), ConfigError);
        CHECK_THROWS_AS(load_config_file("/nonexistent/cfg.txt"), ConfigError);
        ExperimentConfig bad;
        bad.batch_size = 0;
        CHECK_THROWS_AS(validate(bad), ConfigError);
        bad = {};
        bad.classes = {4, 4};
        CHECK_THROWS_AS(validate(bad), ConfigError);
    }
    SECTION("run names") {
        ExperimentConfig cfg;
        cfg.channel = 0;
        CHECK(run_name(cfg) == "LAB_L_C14_s0");
        cfg.color_space = colorspace::Target::YCBCR;
        cfg.channel = kAllChannels;
        cfg.template_kind = TemplateKind::U2_CROT;
        cfg.seed = 4;
        CHECK(run_name(cfg) == "YCBCR_YCbCr_U2_CROT_s4");
    }
}

TEST_CASE("Training runs", "[train]") {
    const auto dir = testing::scratch_dir("train");
    auto source = DataSource::from_raw(testing::synthetic_raw(20, 10), dir / "cache");
    auto cfg = tinyConfig(dir / "runs");

    SECTION("metrics shape and counters") {
        const auto m = train_run(cfg, *source);
        CHECK(m.epochs.size() == 2);
        CHECK(m.train_size == 24);
        CHECK(m.test_size == 12);
        // ceil(24 / 8) batches per epoch
        CHECK(m.optimizer_steps == 6);
        CHECK(m.circuit_evals_per_image == 16);
        for (const auto &e : m.epochs) {
            CHECK(e.train_acc >= 0.0);
            CHECK(e.train_acc <= 1.0);
            CHECK(e.test_acc >= 0.0);
            CHECK(e.test_acc <= 1.0);
            // exact fraction of 12
            CHECK(e.test_acc * 12 == Catch::Approx(std::round(e.test_acc * 12)).margin(1e-12));
        }
        const auto run = run_directory(cfg);
        CHECK(fs::exists(run / "metrics.csv"));
        CHECK(fs::exists(run / "config.txt"));
        CHECK(fs::exists(run / "summary.json"));
        CHECK(slurp(run / "metrics.csv").rfind("epoch,train_loss,train_acc,test_loss,test_acc\n", 0) == 0);
        const auto summary = nlohmann::json::parse(slurp(run / "summary.json"));
        CHECK(summary["optimizer_steps"] == 6);
        CHECK(parse_config_text(slurp(run / "config.txt")).seed == cfg.seed);
        CHECK(fs::exists(dir / "cache" / "cache_LAB_s0_5x5_train_c0-1_n12-6.bin"));
    }
    SECTION("identical seeds give identical bytes") {
        cfg.template_kind = TemplateKind::U1_CROT;
        cfg.channel = kAllChannels;
        const auto a = train_run(cfg, *source);
        const std::string first = slurp(run_directory(cfg) / "metrics.csv");
        auto fresh = DataSource::from_raw(testing::synthetic_raw(20, 10));
        const auto b = train_run(cfg, *fresh);
        CHECK(slurp(run_directory(cfg) / "metrics.csv") == first);
        CHECK(metrics_csv(a) == metrics_csv(b));
        cfg.seed = 1;
        CHECK(metrics_csv(train_run(cfg, *source)) != metrics_csv(a));
    }
    SECTION("zero epochs evaluates the untrained model") {
        cfg.epochs = 0;
        const auto m = train_run(cfg, *source);
        CHECK(m.epochs.empty());
        CHECK(m.optimizer_steps == 0);
        CHECK(m.circuit_evals_per_image == 16);
        CHECK(m.final_test_accuracy >= 0.0);
        CHECK(m.final_test_accuracy <= 1.0);
    }
    SECTION("image size mismatch and missing data") {
        const auto prepared = source->get(colorspace::Target::LAB, 0, 6, {{0, 1}, 12, 6});
        CHECK_THROWS_AS(train_on(cfg, prepared), ConfigError);
        auto missing = DataSource::from_directory(dir / "absent");
        CHECK_THROWS_AS(train_run(cfg, *missing), data::DataError);
    }
    fs::remove_all(dir);
}

TEST_CASE("Untrained accuracy sits at chance on class-free data", "[train]") {
    // 200 noise-only test images: any fixed classifier scores 0.5 +- 0.1
    // with overwhelming probability.
    data::CifarRaw raw;
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        raw.train.push_back(testing::synthetic_record(static_cast<std::uint8_t>(2 + i % 8), rng));
        raw.test.push_back(testing::synthetic_record(static_cast<std::uint8_t>(2 + i % 8), rng));
    }
    for (int i = 0; i < 400; ++i) {
        auto a = testing::synthetic_record(2, rng), b = testing::synthetic_record(3, rng);
        a.label = static_cast<std::uint8_t>(i % 2);
        b.label = static_cast<std::uint8_t>(i % 2);
        raw.train.push_back(a);
        raw.test.push_back(b);
    }
    auto source = DataSource::from_raw(std::move(raw));
    ExperimentConfig cfg;
    cfg.epochs = 0;
    cfg.train_per_class = 100;
    const auto m = train_run(cfg, *source);
    CHECK(m.test_size == 200);
    CHECK(std::abs(m.final_test_accuracy - 0.5) <= 0.1);
    fs::remove_all("runs");
}

TEST_CASE("Sweep grid", "[sweep]") {
    CHECK(sweep_rows().size() == 12);
    CHECK(sweep_grid().size() == 96);
    const auto one = sweep_grid({"R"}, {TemplateKind::U1_CRX});
    REQUIRE(one.size() == 1);
    CHECK(reference_accuracy(one[0].row, TemplateKind::U1_CRX) == 0.591);
    CHECK(reference_accuracy(*find_row("L"), TemplateKind::C14) == 0.810);
    CHECK(reference_accuracy(*find_row("Cb"), TemplateKind::U1_CRX) == 0.548);
    CHECK(find_row("B(LAB)")->space == colorspace::Target::LAB);
    CHECK(find_row("B(LAB)")->channel == 2);
    CHECK(find_row("YCbCr")->channel == kAllChannels);
    CHECK_FALSE(find_row("Q").has_value());
    CHECK_THROWS(sweep_grid({"Q"}, {}));
}

TEST_CASE("Sweep runs and resumes", "[sweep]") {
    const auto dir = testing::scratch_dir("sweep");
    auto source = DataSource::from_raw(testing::synthetic_raw(20, 10));
    auto cfg = tinyConfig(dir);
    cfg.epochs = 1;
    cfg.repeats = 2;
    cfg.jobs = 2;
    const auto grid = sweep_grid({"R", "Cb"}, {TemplateKind::U1_CRX});

    const auto first = sweep(cfg, grid, *source);
    CHECK(first.computed == 2);
    CHECK(first.resumed == 0);
    CHECK(first.failed == 0);
    for (const auto &c : first.cells) {
        CHECK(c.seeds == std::vector<std::uint64_t>{0, 1});
        CHECK(c.accuracies.size() == 2);
    }
    const auto sdir = sweep_directory(cfg);
    const std::string table = slurp(sdir / "table.csv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 13);
    CHECK(table.rfind("row,U1_CRX,U1_CROT,U2_CRX,U2_CROT,C13,C14,C18,C19\n", 0) == 0);
    const std::string cells = slurp(sdir / "cells.csv");
    CHECK(cells.find("0.591") != std::string::npos);
    CHECK(cells.find("0.548") != std::string::npos);

    fs::remove(sdir / "cells" / "Cb__U1_CRX.json");
    const auto second = sweep(cfg, grid, *source);
    CHECK(second.computed == 1);
    CHECK(second.resumed == 1);

    // a changed setting invalidates finished cells
    cfg.epochs = 2;
    CHECK(sweep(cfg, grid, *source).computed == 2);

    SECTION("failed cells are reported and the sweep continues") {
        auto empty = DataSource::from_directory(dir / "absent");
        const auto res = sweep(cfg, sweep_grid({"G"}, {TemplateKind::C13}), *empty);
        CHECK(res.failed == 1);
        CHECK_FALSE(res.cells[0].error.empty());
    }
    fs::remove_all(dir);
}
