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
#include "support/synthetic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numbers>
#include <set>

using namespace hqcnn;
using namespace hqcnn::data;
namespace fs = std::filesystem;

namespace {

void writeBytes(const fs::path &file, const std::vector<std::uint8_t> &bytes) {
    std::ofstream out(file, std::ios::binary);
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> readBytes(const fs::path &file) {
    std::ifstream in(file, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("Record parsing", "[data]") {
    const auto dir = testing::scratch_dir("records");
    SECTION("one white record") {
        std::vector<std::uint8_t> bytes(kRecordBytes, 255);
        bytes[0] = 1;
        writeBytes(dir / "one.bin", bytes);
        const auto recs = read_cifar_batch(dir / "one.bin");
        REQUIRE(recs.size() == 1);
        CHECK(recs[0].label == 1);
        const auto img = record_to_image(recs[0]);
        CHECK(img.space == ColorSpace::RGB01);
        CHECK(img.height() == 32);
        CHECK(img.width() == 32);
        for (const auto &ch : img.channels) CHECK((ch.array() == 1.0).all());
    }
    SECTION("channel-planar, row-major layout") {
        std::vector<std::uint8_t> bytes(kRecordBytes, 0);
        bytes[0] = 3;
        bytes[1 + 0 * 1024 + 0 * 32 + 5] = 10;  // R, row 0, col 5
        bytes[1 + 1 * 1024 + 2 * 32 + 0] = 20;  // G, row 2, col 0
        bytes[1 + 2 * 1024 + 31 * 32 + 31] = 30; // B, row 31, col 31
        const auto img = record_to_image(parse_record(bytes.data()));
        CHECK(img(0, 5, 0) == 10.0 / 255.0);
        CHECK(img(2, 0, 1) == 20.0 / 255.0);
        CHECK(img(31, 31, 2) == 30.0 / 255.0);
        CHECK(img(5, 0, 0) == 0.0);
    }
    SECTION("truncated file") {
        writeBytes(dir / "short.bin", std::vector<std::uint8_t>(kRecordBytes + 100, 0));
        CHECK_THROWS_AS(read_cifar_batch(dir / "short.bin"), DataError);
    }
    SECTION("label out of range") {
        std::vector<std::uint8_t> bytes(kRecordBytes, 0);
        bytes[0] = 10;
        writeBytes(dir / "bad.bin", bytes);
        CHECK_THROWS_AS(read_cifar_batch(dir / "bad.bin"), DataError);
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(read_cifar_batch(dir / "nope.bin"), DataError);
        CHECK_THROWS_AS(load_cifar10_binary(dir / "nowhere"), DataError);
    }
    SECTION("byte round trip") {
        Rng rng(1, Stream::Test);
        std::vector<std::uint8_t> bytes(kRecordBytes * 5);
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            bytes[i] = static_cast<std::uint8_t>(i % kRecordBytes == 0 ? rng.below(10) : rng.below(256));
        }
        writeBytes(dir / "five.bin", bytes);
        const auto recs = read_cifar_batch(dir / "five.bin");
        REQUIRE(recs.size() == 5);
        for (std::size_t r = 0; r < 5; ++r) {
            const auto s = serialize_record(recs[r]);
            CHECK(std::memcmp(s.data(), bytes.data() + r * kRecordBytes, kRecordBytes) == 0);
        }
        write_cifar_batch(dir / "again.bin", recs);
        CHECK(readBytes(dir / "again.bin") == bytes);
    }
    fs::remove_all(dir);
}

TEST_CASE("Canonical layout", "[data]") {
    const auto dir = testing::scratch_dir("canonical");
    testing::write_canonical_files(dir);
    const auto raw = load_cifar10_binary(dir);
    CHECK(raw.train.size() == 50000);
    CHECK(raw.test.size() == 10000);
    fs::remove_all(dir);
}

TEST_CASE("Seeded splits", "[data]") {
    const auto raw = testing::synthetic_raw(600, 120);
    const auto [train, test] = make_split(raw, 42);

    SECTION("sizes and balance") {
        CHECK(train.size() == 1000);
        CHECK(test.size() == 200);
        CHECK(std::count(train.labels.begin(), train.labels.end(), 0) == 500);
        CHECK(std::count(train.labels.begin(), train.labels.end(), 1) == 500);
        CHECK(std::count(test.labels.begin(), test.labels.end(), 0) == 100);
        CHECK(std::count(test.labels.begin(), test.labels.end(), 1) == 100);
        CHECK(train.split == Split::Train);
        CHECK(test.split == Split::Test);
    }
    SECTION("indices point at records of the right class, without repeats") {
        for (const auto *ds : {&train, &test}) {
            const auto &records = ds->split == Split::Train ? raw.train : raw.test;
            std::set<std::size_t> seen(ds->source_index.begin(), ds->source_index.end());
            CHECK(seen.size() == ds->size());
            for (std::size_t i = 0; i < ds->size(); ++i) {
                CHECK(records[ds->source_index[i]].label == ds->labels[i]);
                CHECK(ds->images[i] == record_to_image(records[ds->source_index[i]]));
            }
        }
    }
    SECTION("same seed, same split; other seed, other split") {
        const auto [train2, test2] = make_split(raw, 42);
        CHECK(train2.source_index == train.source_index);
        CHECK(test2.source_index == test.source_index);
        const auto [train3, test3] = make_split(raw, 43);
        CHECK(train3.source_index != train.source_index);
        CHECK(test3.source_index != test.source_index);
    }
    SECTION("other class pairs") {
        SplitConfig cfg;
        cfg.classes = {3, 8};
        cfg.train_per_class = 10;
        cfg.test_per_class = 5;
        const auto [a, b] = make_split(raw, 1, cfg);
        CHECK(a.size() == 20);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(raw.train[a.source_index[i]].label == cfg.classes[a.labels[i]]);
        }
    }
    SECTION("errors") {
        CHECK_THROWS_AS(make_split(testing::synthetic_raw(100, 120), 0), DataError);
        SplitConfig same;
        same.classes = {2, 2};
        CHECK_THROWS_AS(make_split(raw, 0, same), DataError);
    }
}

TEST_CASE("Preprocessed cache", "[data]") {
    const auto dir = testing::scratch_dir("cache");
    const auto raw = testing::synthetic_raw(30, 10);
    SplitConfig cfg;
    cfg.train_per_class = 20;
    cfg.test_per_class = 5;
    const auto [train, test] = make_split(raw, 5, cfg);
    const auto pre = preprocess_dataset(train, colorspace::Target::YCBCR, 10);
    CHECK(pre.images.front().space == ColorSpace::ANGLES);
    CHECK(pre.images.front().height() == 10);

    const auto file = dir / cache_file_name(colorspace::Target::YCBCR, 5, 10, Split::Train);
    CHECK(file.filename() == "cache_YCBCR_s5_10x10_train.bin");
    write_cache(file, pre, colorspace::Target::YCBCR, 5);
    const auto back = read_cache(file, colorspace::Target::YCBCR, 5);
    CHECK(back.images == pre.images);
    CHECK(back.labels == pre.labels);
    CHECK(back.source_index == pre.source_index);
    CHECK(back.split == Split::Train);

    SECTION("header layout") {
        const auto bytes = readBytes(file);
        CHECK(std::memcmp(bytes.data(), "HQCNNDS\0", 8) == 0);
        std::uint32_t version = 0, h = 0, c = 0;
        std::uint64_t count = 0;
        std::memcpy(&version, bytes.data() + 8, 4);
        std::memcpy(&h, bytes.data() + 20, 4);
        std::memcpy(&c, bytes.data() + 28, 4);
        std::memcpy(&count, bytes.data() + 44, 8);
        CHECK(version == kCacheVersion);
        CHECK(h == 10);
        CHECK(c == 3);
        CHECK(count == 40);
        CHECK(bytes.size() == 52 + 40 + 40 * 8 + 40 * 3 * 100 * 8);
    }
    SECTION("key mismatch and corruption") {
        CHECK_THROWS_AS(read_cache(file, colorspace::Target::LAB, 5), DataError);
        CHECK_THROWS_AS(read_cache(file, colorspace::Target::YCBCR, 6), DataError);
        auto bytes = readBytes(file);
        bytes.resize(bytes.size() - 8);
        writeBytes(dir / "cut.bin", bytes);
        CHECK_THROWS_AS(read_cache(dir / "cut.bin", colorspace::Target::YCBCR, 5), DataError);
        bytes[0] = 'X';
        writeBytes(dir / "bad.bin", bytes);
        CHECK_THROWS_AS(read_cache(dir / "bad.bin", colorspace::Target::YCBCR, 5), DataError);
    }
    fs::remove_all(dir);
}
