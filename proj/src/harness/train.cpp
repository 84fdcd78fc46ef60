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
#include "hqcnn/harness/train.hpp"

#include "hqcnn/harness/model.hpp"
#include "hqcnn/rng.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hqcnn::harness {

namespace fs = std::filesystem;

namespace {

std::string splitSuffix(const data::SplitConfig &s) {
    const data::SplitConfig def;
    if (s.classes == def.classes && s.train_per_class == def.train_per_class &&
        s.test_per_class == def.test_per_class) {
        return {};
    }
    return "_c" + std::to_string(s.classes[0]) + "-" + std::to_string(s.classes[1]) +
           "_n" + std::to_string(s.train_per_class) + "-" +
           std::to_string(s.test_per_class);
}

fs::path cachePath(const fs::path &dir, colorspace::Target target,
                   std::uint64_t seed, std::size_t side, data::Split split,
                   const data::SplitConfig &sc) {
    std::string name = data::cache_file_name(target, seed, side, split);
    name.insert(name.size() - 4, splitSuffix(sc));
    return dir / name;
}

data::Dataset selectChannel(const data::Dataset &ds, int channel) {
    if (channel == kAllChannels) {
        return ds;
    }
    data::Dataset out = ds;
    for (auto &img : out.images) {
        img = img.channel(static_cast<std::size_t>(channel));
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct EvalTotals {
    double loss = 0.0;
    double acc = 0.0;
};

EvalTotals evaluateSet(const HybridModel &model, const data::Dataset &ds) {
    double loss = 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto e = evaluate(model, ds.images[i], ds.labels[i]);
        loss += e.loss;
        correct += e.predicted == ds.labels[i] ? 1 : 0;
    }
    const double n = static_cast<double>(ds.size());
    return {loss / n, static_cast<double>(correct) / n};
}

} // namespace

std::shared_ptr<DataSource> DataSource::from_directory(fs::path data_dir,
                                                       fs::path cache_dir) {
    std::shared_ptr<DataSource> s(new DataSource());
    s->data_dir_ = std::move(data_dir);
    s->cache_dir_ = std::move(cache_dir);
    return s;
}

std::shared_ptr<DataSource> DataSource::from_raw(data::CifarRaw raw,
                                                 fs::path cache_dir) {
    std::shared_ptr<DataSource> s(new DataSource());
    s->raw_ = std::move(raw);
    s->cache_dir_ = std::move(cache_dir);
    return s;
}

const data::CifarRaw &DataSource::raw() {
    if (!raw_) {
        if (data_dir_.empty() || !fs::is_directory(data_dir_)) {
            throw data::DataError("CIFAR-10 directory not found: '" +
                                  data_dir_.string() + "' (set data_dir or " +
                                  kDataDirEnv + ")");
        }
        raw_ = data::load_cifar10_binary(data_dir_);
    }
    return *raw_;
}

PreparedData DataSource::get(colorspace::Target target, std::uint64_t seed,
                             std::size_t side, const data::SplitConfig &split) {
    std::lock_guard lock(mutex_);
    const bool cached = !cache_dir_.empty();
    fs::path train_file, test_file;
    if (cached) {
        train_file = cachePath(cache_dir_, target, seed, side, data::Split::Train, split);
        test_file = cachePath(cache_dir_, target, seed, side, data::Split::Test, split);
        if (fs::exists(train_file) && fs::exists(test_file)) {
            return {data::read_cache(train_file, target, seed),
                    data::read_cache(test_file, target, seed)};
        }
    }
    auto [train, test] = data::make_split(raw(), seed, split);
    PreparedData out{data::preprocess_dataset(train, target, side),
                     data::preprocess_dataset(test, target, side)};
    if (cached) {
        fs::create_directories(cache_dir_);
        data::write_cache(train_file, out.train, target, seed);
        data::write_cache(test_file, out.test, target, seed);
    }
    return out;
}

RunMetrics train_on(const ExperimentConfig &config, const PreparedData &prepared) {
    validate(config);
    const auto started = std::chrono::steady_clock::now();

    const data::Dataset train = selectChannel(prepared.train, config.channel);
    const data::Dataset test = selectChannel(prepared.test, config.channel);
    if (train.size() == 0 || test.size() == 0) {
        throw data::DataError("empty train or test split");
    }
    if (train.images.front().height() != config.image_size) {
        throw ConfigError("prepared images are " +
                          std::to_string(train.images.front().height()) +
                          " px, config.image_size is " +
                          std::to_string(config.image_size));
    }

    templates::BuildOptions opts;
    opts.trainable_cphase = config.trainable_cphase;
    auto circuit = templates::build_template(config.template_kind, config.mode(), opts);

    Rng init_rng(config.seed, Stream::Init);
    Rng shuffle_rng(config.seed, Stream::Shuffle);
    Rng rrelu_rng(config.seed, Stream::RReLU);

    HybridModel model = HybridModel::init(std::move(circuit), config.image_size,
                                          config.hidden_width, config.stride,
                                          init_rng);
    nn::AdamConfig<double> adam;
    adam.lr = config.learning_rate;
    ModelOptimizer optimizer(model, adam);

    RunMetrics metrics;
    metrics.config = config;
    metrics.train_size = train.size();
    metrics.test_size = test.size();

    auto noteRuns = [&](std::size_t runs) {
        if (metrics.circuit_evals_per_image == 0) {
            metrics.circuit_evals_per_image = runs;
        } else if (runs != metrics.circuit_evals_per_image) {
            throw std::logic_error("circuit evaluation count changed between images");
        }
    };

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto hidden = model.hidden.outputs();

    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        shuffle_rng.shuffle(std::span<std::size_t>(order));
        double loss_sum = 0.0;
        std::size_t correct = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t end = std::min(order.size(), start + config.batch_size);
            ModelGradients grads = ModelGradients::zeros_like(model);
            for (std::size_t k = start; k < end; ++k) {
                const std::size_t idx = order[k];
                const Eigen::VectorXd slopes =
                    nn::rrelu_sample_slopes<double>(hidden, rrelu_rng);
                const auto ev = accumulate_gradients(model, train.images[idx],
                                                     train.labels[idx], slopes, grads);
                noteRuns(ev.circuit_runs);
                loss_sum += ev.loss;
                correct += ev.predicted == train.labels[idx] ? 1 : 0;
            }
            grads *= 1.0 / static_cast<double>(end - start);
            optimizer.step(model, grads);
        }
        const EvalTotals t = evaluateSet(model, test);
        const double n = static_cast<double>(train.size());
        metrics.epochs.push_back(
            {epoch, loss_sum / n, static_cast<double>(correct) / n, t.loss, t.acc});
    }

    if (metrics.epochs.empty()) {
        const EvalTotals t = evaluateSet(model, test);
        metrics.final_test_accuracy = t.acc;
        metrics.final_test_loss = t.loss;
        noteRuns(evaluate(model, test.images.front(), test.labels.front()).circuit_runs);
    } else {
        metrics.final_test_accuracy = metrics.epochs.back().test_acc;
        metrics.final_test_loss = metrics.epochs.back().test_loss;
    }
    metrics.optimizer_steps = static_cast<std::size_t>(optimizer.steps());
    metrics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return metrics;
}

fs::path run_directory(const ExperimentConfig &config) {
    return config.output_dir / run_name(config);
}

RunMetrics train_run(const ExperimentConfig &config, DataSource &source) {
    validate(config);
    data::SplitConfig split;
    split.classes = config.classes;
    split.train_per_class = config.train_per_class;
    split.test_per_class = config.test_per_class;
    const PreparedData prepared =
        source.get(config.color_space, config.seed, config.image_size, split);
    RunMetrics metrics = train_on(config, prepared);
    write_run_outputs(metrics, run_directory(config));
    return metrics;
}

std::string metrics_csv(const RunMetrics &m) {
    std::ostringstream os;
    os << "epoch,train_loss,train_acc,test_loss,test_acc\n";
    for (const auto &e : m.epochs) {
        os << e.epoch << ',' << fmt(e.train_loss) << ',' << fmt(e.train_acc) << ','
           << fmt(e.test_loss) << ',' << fmt(e.test_acc) << '\n';
    }
    return os.str();
}

void write_run_outputs(const RunMetrics &m, const fs::path &dir) {
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "metrics.csv", std::ios::binary);
        out << metrics_csv(m);
    }
    {
        std::ofstream out(dir / "config.txt");
        out << to_text(m.config);
    }
    nlohmann::json j;
    j["run"] = run_name(m.config);
    j["final_test_accuracy"] = m.final_test_accuracy;
    j["final_test_loss"] = m.final_test_loss;
    j["wall_seconds"] = m.wall_seconds;
    j["optimizer_steps"] = m.optimizer_steps;
    j["circuit_evals_per_image"] = m.circuit_evals_per_image;
    j["train_size"] = m.train_size;
    j["test_size"] = m.test_size;
    j["config"] = to_text(m.config);
    {
        std::ofstream out(dir / "summary.json");
        out << j.dump(2) << '\n';
    }
    if (m.config.plot) {
        std::ofstream gp(dir / "curves.gp");
        gp << "set datafile separator ','\n"
              "set key autotitle columnhead\n"
              "set xlabel 'epoch'\n"
              "set terminal pngcairo size 1000,400\n"
              "set output 'curves.png'\n"
              "set multiplot layout 1,2\n"
              "set title 'loss'\n"
              "plot 'metrics.csv' using 1:2 with lines, '' using 1:4 with lines\n"
              "set title 'accuracy'\n"
              "set yrange [0:1]\n"
              "plot 'metrics.csv' using 1:3 with lines, '' using 1:5 with lines\n"
              "unset multiplot\n";
    }
}

} // namespace hqcnn::harness
