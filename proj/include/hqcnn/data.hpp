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
 * CIFAR-10 binary ingestion, class filtering and seeded subsets.
 *
 * Binary layout: each record is 1 label byte followed by 3072 pixel bytes,
 * channel-planar (1024 R, 1024 G, 1024 B), each plane row-major 32x32.
 * Training files are data_batch_1.bin .. data_batch_5.bin, the test file is
 * test_batch.bin; each holds 10000 records.
 */
#pragma once

#include "hqcnn/colorspace.hpp"
#include "hqcnn/image.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hqcnn::data {

/// Bad, missing or inconsistent input data.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kSide = 32;
inline constexpr std::size_t kPixelBytes = 3 * kSide * kSide;
inline constexpr std::size_t kRecordBytes = 1 + kPixelBytes;
inline constexpr std::size_t kRecordsPerFile = 10000;
inline constexpr std::uint8_t kNumClasses = 10;

struct CifarRecord {
    std::uint8_t label = 0;
    std::array<std::uint8_t, kPixelBytes> pixels{};
    bool operator==(const CifarRecord &) const = default;
};

struct CifarRaw {
    std::vector<CifarRecord> train;
    std::vector<CifarRecord> test;
};

/// Parses one batch file; any record count is accepted.
std::vector<CifarRecord> read_cifar_batch(const std::filesystem::path &file);
void write_cifar_batch(const std::filesystem::path &file,
                       const std::vector<CifarRecord> &records);

/// Reads the five training files and the test file from `dir`.
CifarRaw load_cifar10_binary(const std::filesystem::path &dir);

std::array<std::uint8_t, kRecordBytes> serialize_record(const CifarRecord &rec);
CifarRecord parse_record(const std::uint8_t *bytes);

/// Pixel bytes / 255 as a 32x32x3 RGB01 image.
ImageTensor record_to_image(const CifarRecord &rec);

enum class Split { Train, Test };

struct Dataset {
    Split split = Split::Train;
    std::vector<ImageTensor> images;
    /// 0 for the first selected class, 1 for the second.
    std::vector<int> labels;
    /// Record index in the source split each image came from.
    std::vector<std::size_t> source_index;
    [[nodiscard]] std::size_t size() const { return images.size(); }
};

struct SplitConfig {
    std::array<std::uint8_t, 2> classes{0, 1};
    std::size_t train_per_class = 500;
    std::size_t test_per_class = 100;
};

/**
 * Per class: collect the record indices of that class, Fisher-Yates
 * shuffle them with Rng(seed, Stream::DataSplit), keep the first n.
 * Images are emitted class 0 block first, then class 1.
 */
std::pair<Dataset, Dataset> make_split(const CifarRaw &raw, std::uint64_t seed,
                                       const SplitConfig &config = {});

/// Applies colorspace::preprocess to every image.
Dataset preprocess_dataset(const Dataset &ds, colorspace::Target target,
                           std::size_t side);

/**
 * Preprocessed-tensor cache, little-endian:
 *
 *     char[8]  magic "HQCNNDS\0"
 *     u32      schema version (1)
 *     u32      color space tag (ColorSpace enum value)
 *     u32      target tag (colorspace::Target enum value)
 *     u32      height, width, channels
 *     u32      split (0 train, 1 test)
 *     u64      seed
 *     u64      count
 *     u8[count]        labels
 *     u64[count]       source indices
 *     f64[count*C*H*W] pixels, image-major, then channel, row, column
 */
inline constexpr std::uint32_t kCacheVersion = 1;

void write_cache(const std::filesystem::path &file, const Dataset &ds,
                 colorspace::Target target, std::uint64_t seed);
Dataset read_cache(const std::filesystem::path &file,
                   colorspace::Target expected_target,
                   std::uint64_t expected_seed);

/// Cache file name keyed by (color space, seed, size, split).
std::string cache_file_name(colorspace::Target target, std::uint64_t seed,
                            std::size_t side, Split split);

std::string_view to_string(colorspace::Target target);

} // namespace hqcnn::data
