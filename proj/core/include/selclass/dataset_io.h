// Copyright 2026 The selclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELCLASS_DATASET_IO_H_
#define SELCLASS_DATASET_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selclass/classifier.h"

namespace selclass {

// CSV: one row per sample, C logit columns then the integer label, with an
// optional header line.
//
// RawBinary: 16-byte little-endian header ("SCLG", u16 version = 1,
// u16 reserved, u32 N, u32 C), then N x C float32 logits row-major, then N
// u32 labels.
enum class DatasetFormat { kCsv, kRawBinary };

inline constexpr std::uint16_t kRawBinaryVersion = 1;

struct Dataset {
  LogitMatrix logits;
  Labels labels;
};

// Errors carry the 1-based line (CSV) or byte offset (RawBinary).
Dataset ParseCsv(std::string_view text);
Dataset ParseRawBinary(std::string_view bytes);

// Doubles printed with 17 significant digits, so parsing is exact.
std::string FormatCsv(const LogitMatrix& logits, std::span<const int> labels,
                      bool header = false);
// Logits are rounded to float32.
std::string EncodeRawBinary(const LogitMatrix& logits,
                            std::span<const int> labels);

// Files starting with "SCLG" are RawBinary, everything else is CSV.
DatasetFormat DetectFormat(std::string_view bytes);
// ".csv" -> CSV, ".bin"/".sclg" -> RawBinary.
std::optional<DatasetFormat> FormatFromExtension(
    const std::filesystem::path& path);

Dataset LoadDataset(const std::filesystem::path& path,
                    std::optional<DatasetFormat> format = std::nullopt);
void SaveDataset(const std::filesystem::path& path, const LogitMatrix& logits,
                 std::span<const int> labels, DatasetFormat format);

// Whole-file helpers; throw ParseError on I/O failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace selclass

#endif  // SELCLASS_DATASET_IO_H_
