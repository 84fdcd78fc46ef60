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

#include "hqcnn/data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace hqcnn::harness {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

template <typename T> T parseNumber(std::string_view key, std::string_view v) {
    T out{};
    const auto *end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("bad value '" + std::string(v) + "' for " +
                          std::string(key));
    }
    return out;
}

bool parseBool(std::string_view key, std::string_view v) {
    const std::string u = upper(v);
    if (u == "TRUE" || u == "1" || u == "YES") {
        return true;
    }
    if (u == "FALSE" || u == "0" || u == "NO") {
        return false;
    }
    throw ConfigError("bad boolean '" + std::string(v) + "' for " +
                      std::string(key));
}

constexpr std::array<std::array<const char *, 3>, 3> kChannelLetters = {{
    {"R", "G", "B"},
    {"L", "A", "B"},
    {"Y", "Cb", "Cr"},
}};

} // namespace

std::optional<colorspace::Target> parse_target(std::string_view name) {
    const std::string u = upper(name);
    if (u == "RGB") return colorspace::Target::RGB;
    if (u == "LAB") return colorspace::Target::LAB;
    if (u == "YCBCR") return colorspace::Target::YCBCR;
    return std::nullopt;
}

std::optional<int> parse_channel(std::string_view name,
                                 colorspace::Target space) {
    const std::string u = upper(name);
    if (u == "ALL") {
        return kAllChannels;
    }
    if (u == "0" || u == "1" || u == "2") {
        return u[0] - '0';
    }
    const auto &letters = kChannelLetters[static_cast<std::size_t>(space)];
    for (int c = 0; c < 3; ++c) {
        if (upper(letters[static_cast<std::size_t>(c)]) == u) {
            return c;
        }
    }
    return std::nullopt;
}

std::string channel_label(colorspace::Target space, int channel) {
    if (channel == kAllChannels) {
        return space == colorspace::Target::YCBCR
                   ? "YCbCr"
                   : std::string(data::to_string(space));
    }
    return kChannelLetters[static_cast<std::size_t>(space)]
                          [static_cast<std::size_t>(channel)];
}

void set_field(ExperimentConfig &cfg, std::string_view key,
               std::string_view raw) {
    const std::string value = trim(raw);
    if (key == "color_space") {
        auto t = parse_target(value);
        if (!t) throw ConfigError("unknown color_space '" + value + "'");
        cfg.color_space = *t;
    } else if (key == "channel") {
        auto c = parse_channel(value, cfg.color_space);
        if (!c) throw ConfigError("unknown channel '" + value + "'");
        cfg.channel = *c;
    } else if (key == "template") {
        auto k = templates::parse_kind(value);
        if (!k) throw ConfigError("unknown template '" + value + "'");
        cfg.template_kind = *k;
    } else if (key == "seed") {
        cfg.seed = parseNumber<std::uint64_t>(key, value);
    } else if (key == "epochs") {
        cfg.epochs = parseNumber<std::size_t>(key, value);
    } else if (key == "batch_size") {
        cfg.batch_size = parseNumber<std::size_t>(key, value);
    } else if (key == "learning_rate") {
        cfg.learning_rate = parseNumber<double>(key, value);
    } else if (key == "hidden_width") {
        cfg.hidden_width = parseNumber<std::size_t>(key, value);
    } else if (key == "stride") {
        cfg.stride = parseNumber<std::size_t>(key, value);
    } else if (key == "image_size") {
        cfg.image_size = parseNumber<std::size_t>(key, value);
    } else if (key == "trainable_cphase") {
        cfg.trainable_cphase = parseBool(key, value);
    } else if (key == "repeats") {
        cfg.repeats = parseNumber<std::size_t>(key, value);
    } else if (key == "jobs") {
        cfg.jobs = parseNumber<std::size_t>(key, value);
    } else if (key == "classes") {
        const auto comma = value.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("classes needs two comma-separated indices");
        }
        cfg.classes[0] = static_cast<std::uint8_t>(
            parseNumber<unsigned>(key, trim(value.substr(0, comma))));
        cfg.classes[1] = static_cast<std::uint8_t>(
            parseNumber<unsigned>(key, trim(value.substr(comma + 1))));
    } else if (key == "train_per_class") {
        cfg.train_per_class = parseNumber<std::size_t>(key, value);
    } else if (key == "test_per_class") {
        cfg.test_per_class = parseNumber<std::size_t>(key, value);
    } else if (key == "data_dir") {
        cfg.data_dir = value;
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "cache_dir") {
        cfg.cache_dir = value;
    } else if (key == "plot") {
        cfg.plot = parseBool(key, value);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

ExperimentConfig parse_config_text(std::string_view text,
                                   ExperimentConfig cfg) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    // color_space is applied first so channel letters resolve against it
    // regardless of line order.
    std::vector<std::pair<std::string, std::string>> entries;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    std::stable_partition(entries.begin(), entries.end(),
                          [](const auto &e) { return e.first == "color_space"; });
    for (const auto &[k, v] : entries) {
        set_field(cfg, k, v);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path &file,
                                  ExperimentConfig base) {
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot read config file " + file.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

std::string to_text(const ExperimentConfig &cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "color_space = " << data::to_string(cfg.color_space) << "\n"
       << "channel = " << (cfg.channel == kAllChannels ? std::string("all")
                                                       : std::to_string(cfg.channel))
       << "\n"
       << "template = " << templates::to_string(cfg.template_kind) << "\n"
       << "seed = " << cfg.seed << "\n"
       << "epochs = " << cfg.epochs << "\n"
       << "batch_size = " << cfg.batch_size << "\n"
       << "learning_rate = " << cfg.learning_rate << "\n"
       << "hidden_width = " << cfg.hidden_width << "\n"
       << "stride = " << cfg.stride << "\n"
       << "image_size = " << cfg.image_size << "\n"
       << "trainable_cphase = " << (cfg.trainable_cphase ? "true" : "false") << "\n"
       << "repeats = " << cfg.repeats << "\n"
       << "jobs = " << cfg.jobs << "\n"
       << "classes = " << int(cfg.classes[0]) << "," << int(cfg.classes[1]) << "\n"
       << "train_per_class = " << cfg.train_per_class << "\n"
       << "test_per_class = " << cfg.test_per_class << "\n"
       << "data_dir = " << cfg.data_dir.string() << "\n"
       << "output_dir = " << cfg.output_dir.string() << "\n";
    if (!cfg.cache_dir.empty()) {
        os << "cache_dir = " << cfg.cache_dir.string() << "\n";
    }
    os << "plot = " << (cfg.plot ? "true" : "false") << "\n";
    return os.str();
}

void validate(const ExperimentConfig &cfg) {
    auto require = [](bool ok, const std::string &what) {
        if (!ok) throw ConfigError(what);
    };
    require(cfg.channel == kAllChannels || (cfg.channel >= 0 && cfg.channel <= 2),
            "channel must be 0, 1, 2 or all");
    require(cfg.batch_size > 0, "batch_size must be positive");
    require(cfg.learning_rate > 0.0, "learning_rate must be positive");
    require(cfg.hidden_width > 0, "hidden_width must be positive");
    require(cfg.stride > 0, "stride must be positive");
    require(cfg.image_size >= 2, "image_size must be at least 2");
    require(cfg.repeats > 0, "repeats must be positive");
    require(cfg.jobs > 0, "jobs must be positive");
    require(cfg.classes[0] != cfg.classes[1] && cfg.classes[0] < 10 &&
                cfg.classes[1] < 10,
            "classes must be two distinct indices in 0..9");
    require(cfg.train_per_class > 0 && cfg.test_per_class > 0,
            "per-class counts must be positive");
}

std::string run_name(const ExperimentConfig &cfg) {
    return std::string(data::to_string(cfg.color_space)) + "_" +
           channel_label(cfg.color_space, cfg.channel) + "_" +
           std::string(templates::to_string(cfg.template_kind)) + "_s" +
           std::to_string(cfg.seed);
}

} // namespace hqcnn::harness
