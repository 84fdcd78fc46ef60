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
#include "hqcnn/data.hpp"

#include "hqcnn/rng.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace hqcnn::data {

static_assert(std::endian::native == std::endian::little,
              "cache I/O assumes a little-endian host");

namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> readAll(const fs::path &file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + file.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T> void put(std::ofstream &out, T v) {
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T> T get(std::ifstream &in, const fs::path &file) {
    T v{};
    if (!in.read(reinterpret_cast<char *>(&v), sizeof(T))) {
        throw DataError("truncated cache file " + file.string());
    }
    return v;
}

constexpr char kMagic[8] = {'H', 'Q', 'C', 'N', 'N', 'D', 'S', '\0'};

} // namespace

CifarRecord parse_record(const std::uint8_t *bytes) {
    CifarRecord rec;
    rec.label = bytes[0];
    if (rec.label >= kNumClasses) {
        throw DataError("label byte " + std::to_string(rec.label) + " > 9");
    }
    std::memcpy(rec.pixels.data(), bytes + 1, kPixelBytes);
    return rec;
}

std::array<std::uint8_t, kRecordBytes> serialize_record(const CifarRecord &rec) {
    std::array<std::uint8_t, kRecordBytes> out{};
    out[0] = rec.label;
    std::memcpy(out.data() + 1, rec.pixels.data(), kPixelBytes);
    return out;
}

std::vector<CifarRecord> read_cifar_batch(const fs::path &file) {
    if (!fs::exists(file)) {
        throw DataError("missing CIFAR-10 file " + file.string());
    }
    const auto bytes = readAll(file);
    if (bytes.size() % kRecordBytes != 0) {
        throw DataError(file.string() + ": truncated record (" +
                        std::to_string(bytes.size()) +
                        " bytes is not a multiple of 3073)");
    }
    std::vector<CifarRecord> out;
    out.reserve(bytes.size() / kRecordBytes);
    for (std::size_t off = 0; off < bytes.size(); off += kRecordBytes) {
        out.push_back(parse_record(bytes.data() + off));
    }
    return out;
}

void write_cifar_batch(const fs::path &file,
                       const std::vector<CifarRecord> &records) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw DataError("cannot write " + file.string());
    }
    for (const auto &r : records) {
        const auto bytes = serialize_record(r);
        out.write(reinterpret_cast<const char *>(bytes.data()), bytes.size());
    }
}

CifarRaw load_cifar10_binary(const fs::path &dir) {
    CifarRaw raw;
    for (int i = 1; i <= 5; ++i) {
        auto batch = read_cifar_batch(dir / ("data_batch_" + std::to_string(i) + ".bin"));
        raw.train.insert(raw.train.end(), batch.begin(), batch.end());
    }
    raw.test = read_cifar_batch(dir / "test_batch.bin");
    return raw;
}

ImageTensor record_to_image(const CifarRecord &rec) {
    ImageTensor img(ColorSpace::RGB01, kSide, kSide, 3);
    std::size_t k = 0;
    for (std::size_t ch = 0; ch < 3; ++ch) {
        for (std::size_t r = 0; r < kSide; ++r) {
            for (std::size_t c = 0; c < kSide; ++c) {
                img(r, c, ch) = rec.pixels[k++] / 255.0;
            }
        }
    }
    return img;
}

std::pair<Dataset, Dataset> make_split(const CifarRaw &raw, std::uint64_t seed,
                                       const SplitConfig &config) {
    if (config.classes[0] == config.classes[1] ||
        config.classes[0] >= kNumClasses || config.classes[1] >= kNumClasses) {
        throw DataError("split needs two distinct classes in 0..9");
    }
    Rng rng(seed, Stream::DataSplit);
    auto take = [&](const std::vector<CifarRecord> &records, Split split,
                    std::size_t per_class) {
        Dataset ds;
        ds.split = split;
        for (int label = 0; label < 2; ++label) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < records.size(); ++i) {
                if (records[i].label == config.classes[label]) {
                    idx.push_back(i);
                }
            }
            if (idx.size() < per_class) {
                throw DataError("class " + std::to_string(config.classes[label]) +
                                " has " + std::to_string(idx.size()) +
                                " records, need " + std::to_string(per_class));
            }
            rng.shuffle(std::span<std::size_t>(idx));
            for (std::size_t k = 0; k < per_class; ++k) {
                ds.images.push_back(record_to_image(records[idx[k]]));
                ds.labels.push_back(label);
                ds.source_index.push_back(idx[k]);
            }
        }
        return ds;
    };
    Dataset train = take(raw.train, Split::Train, config.train_per_class);
    Dataset test = take(raw.test, Split::Test, config.test_per_class);
    return {std::move(train), std::move(test)};
}

Dataset preprocess_dataset(const Dataset &ds, colorspace::Target target,
                           std::size_t side) {
    Dataset out = ds;
    for (auto &img : out.images) {
        img = colorspace::preprocess(img, target, side, side);
    }
    return out;
}

std::string_view to_string(colorspace::Target target) {
    switch (target) {
    case colorspace::Target::RGB: return "RGB";
    case colorspace::Target::LAB: return "LAB";
    case colorspace::Target::YCBCR: return "YCBCR";
    }
    return "?";
}

std::string cache_file_name(colorspace::Target target, std::uint64_t seed,
                            std::size_t side, Split split) {
    return "cache_" + std::string(to_string(target)) + "_s" +
           std::to_string(seed) + "_" + std::to_string(side) + "x" +
           std::to_string(side) + (split == Split::Train ? "_train" : "_test") +
           ".bin";
}

void write_cache(const fs::path &file, const Dataset &ds,
                 colorspace::Target target, std::uint64_t seed) {
    if (ds.images.empty()) {
        throw DataError("refusing to cache an empty dataset");
    }
    const ImageTensor &first = ds.images.front();
    const fs::path tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw DataError("cannot write " + tmp.string());
        }
        out.write(kMagic, sizeof(kMagic));
        put<std::uint32_t>(out, kCacheVersion);
        put<std::uint32_t>(out, static_cast<std::uint32_t>(first.space));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(target));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(first.height()));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(first.width()));
        put<std::uint32_t>(out, static_cast<std::uint32_t>(first.numChannels()));
        put<std::uint32_t>(out, ds.split == Split::Train ? 0u : 1u);
        put<std::uint64_t>(out, seed);
        put<std::uint64_t>(out, ds.size());
        for (int l : ds.labels) {
            put<std::uint8_t>(out, static_cast<std::uint8_t>(l));
        }
        for (auto s : ds.source_index) {
            put<std::uint64_t>(out, s);
        }
        for (const auto &img : ds.images) {
            for (const auto &ch : img.channels) {
                for (Eigen::Index r = 0; r < ch.rows(); ++r) {
                    for (Eigen::Index c = 0; c < ch.cols(); ++c) {
                        put<double>(out, ch(r, c));
                    }
                }
            }
        }
    }
    fs::rename(tmp, file);
}

Dataset read_cache(const fs::path &file, colorspace::Target expected_target,
                   std::uint64_t expected_seed) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw DataError("cannot open cache " + file.string());
    }
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, 8) != 0) {
        throw DataError(file.string() + ": not a dataset cache");
    }
    if (get<std::uint32_t>(in, file) != kCacheVersion) {
        throw DataError(file.string() + ": unsupported cache version");
    }
    const auto space = static_cast<ColorSpace>(get<std::uint32_t>(in, file));
    const auto target = static_cast<colorspace::Target>(get<std::uint32_t>(in, file));
    const auto h = get<std::uint32_t>(in, file);
    const auto w = get<std::uint32_t>(in, file);
    const auto c = get<std::uint32_t>(in, file);
    const auto split = get<std::uint32_t>(in, file);
    const auto seed = get<std::uint64_t>(in, file);
    const auto count = get<std::uint64_t>(in, file);
    if (target != expected_target || seed != expected_seed) {
        throw DataError(file.string() + ": cache key mismatch");
    }
    Dataset ds;
    ds.split = split == 0 ? Split::Train : Split::Test;
    ds.labels.resize(count);
    ds.source_index.resize(count);
    for (auto &l : ds.labels) {
        l = get<std::uint8_t>(in, file);
    }
    for (auto &s : ds.source_index) {
        s = get<std::uint64_t>(in, file);
    }
    ds.images.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        ImageTensor img(space, h, w, c);
        for (auto &ch : img.channels) {
            for (Eigen::Index r = 0; r < ch.rows(); ++r) {
                for (Eigen::Index col = 0; col < ch.cols(); ++col) {
                    ch(r, col) = get<double>(in, file);
                }
            }
        }
        ds.images.push_back(std::move(img));
    }
    return ds;
}

} // namespace hqcnn::data
