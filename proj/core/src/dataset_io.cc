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

#include "selclass/dataset_io.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "selclass/errors.h"

namespace selclass {
namespace {

constexpr std::string_view kMagic = "SCLG";
constexpr std::size_t kHeaderBytes = 16;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool ParseDouble(std::string_view field, double* out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), *out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool ParseInt(std::string_view field, long long* out) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), *out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

[[noreturn]] void LineError(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void OffsetError(std::size_t offset, const std::string& what) {
  throw ParseError("byte offset " + std::to_string(offset) + ": " + what);
}

template <typename T>
T ReadLe(std::string_view bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    value |= static_cast<T>(static_cast<unsigned char>(bytes[offset + b]))
             << (8 * b);
  }
  return value;
}

template <typename T>
void AppendLe(std::string* out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out->push_back(static_cast<char>((value >> (8 * b)) & 0xFF));
  }
}

void AppendDouble(std::string* out, double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
  out->append(buf, static_cast<std::size_t>(len));
}

}  // namespace

Dataset ParseCsv(std::string_view text) {
  std::vector<double> values;
  Labels labels;
  std::size_t cols = 0;
  std::size_t line_no = 0;
  bool seen_data = false;
  bool header_checked = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    const auto fields = SplitFields(line);
    if (!header_checked) {
      header_checked = true;
      double probe;
      bool numeric = true;
      for (const auto f : fields) numeric = numeric && ParseDouble(f, &probe);
      if (!numeric) continue;  // header
    }
    if (fields.size() < 3) {
      LineError(line_no, "expected at least 2 logits and a label");
    }
    if (!seen_data) {
      cols = fields.size() - 1;
      seen_data = true;
    } else if (fields.size() != cols + 1) {
      LineError(line_no, "expected " + std::to_string(cols + 1) +
                             " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double v;
      if (!ParseDouble(fields[j], &v)) {
        LineError(line_no, "column " + std::to_string(j + 1) +
                               ": malformed number '" + std::string(fields[j]) +
                               "'");
      }
      if (!std::isfinite(v)) {
        LineError(line_no,
                  "column " + std::to_string(j + 1) + ": non-finite logit");
      }
      values.push_back(v);
    }
    long long label;
    if (!ParseInt(fields[cols], &label)) {
      LineError(line_no, "malformed label '" + std::string(fields[cols]) + "'");
    }
    if (label < 0 || static_cast<unsigned long long>(label) >= cols) {
      LineError(line_no, "label " + std::to_string(label) + " outside [0, " +
                             std::to_string(cols) + ")");
    }
    labels.push_back(static_cast<int>(label));
  }
  if (labels.empty()) throw ParseError("no data rows");
  return Dataset{LogitMatrix(labels.size(), cols, std::move(values)),
                 std::move(labels)};
}

Dataset ParseRawBinary(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) OffsetError(0, "truncated header");
  if (bytes.substr(0, 4) != kMagic) OffsetError(0, "bad magic");
  const auto version = ReadLe<std::uint16_t>(bytes, 4);
  if (version != kRawBinaryVersion) {
    OffsetError(4, "unsupported version " + std::to_string(version));
  }
  const std::uint64_t n = ReadLe<std::uint32_t>(bytes, 8);
  const std::uint64_t c = ReadLe<std::uint32_t>(bytes, 12);
  if (n == 0) OffsetError(8, "N must be positive");
  if (c < 2) OffsetError(12, "C must be at least 2");
  const std::uint64_t expected = kHeaderBytes + 4 * n * c + 4 * n;
  if (bytes.size() != expected) {
    OffsetError(bytes.size() < expected ? bytes.size() : expected,
                "expected " + std::to_string(expected) + " bytes, got " +
                    std::to_string(bytes.size()));
  }
  std::vector<double> values(n * c);
  for (std::size_t k = 0; k < n * c; ++k) {
    const std::size_t offset = kHeaderBytes + 4 * k;
    const float v = std::bit_cast<float>(ReadLe<std::uint32_t>(bytes, offset));
    if (!std::isfinite(v)) OffsetError(offset, "non-finite logit");
    values[k] = static_cast<double>(v);
  }
  Labels labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t offset = kHeaderBytes + 4 * n * c + 4 * i;
    const auto label = ReadLe<std::uint32_t>(bytes, offset);
    if (label >= c) {
      OffsetError(offset, "label " + std::to_string(label) + " outside [0, " +
                              std::to_string(c) + ")");
    }
    labels[i] = static_cast<int>(label);
  }
  return Dataset{LogitMatrix(n, c, std::move(values)), std::move(labels)};
}

std::string FormatCsv(const LogitMatrix& logits, std::span<const int> labels,
                      bool header) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  std::string out;
  if (header) {
    for (std::size_t j = 0; j < logits.cols(); ++j) {
      out += "logit_" + std::to_string(j) + ",";
    }
    out += "label\n";
  }
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    for (const double v : logits.row(i)) {
      AppendDouble(&out, v);
      out += ',';
    }
    out += std::to_string(labels[i]);
    out += '\n';
  }
  return out;
}

std::string EncodeRawBinary(const LogitMatrix& logits,
                            std::span<const int> labels) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  if (logits.rows() > UINT32_MAX || logits.cols() > UINT32_MAX) {
    throw DimensionError("dataset too large for RawBinary");
  }
  std::string out(kMagic);
  out.reserve(kHeaderBytes + 4 * logits.values().size() + 4 * labels.size());
  AppendLe<std::uint16_t>(&out, kRawBinaryVersion);
  AppendLe<std::uint16_t>(&out, 0);
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(logits.rows()));
  AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(logits.cols()));
  for (const double v : logits.values()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) throw ParameterError("logit overflows float32");
    AppendLe<std::uint32_t>(&out, std::bit_cast<std::uint32_t>(f));
  }
  for (const int label : labels) {
    AppendLe<std::uint32_t>(&out, static_cast<std::uint32_t>(label));
  }
  return out;
}

DatasetFormat DetectFormat(std::string_view bytes) {
  return bytes.substr(0, kMagic.size()) == kMagic ? DatasetFormat::kRawBinary
                                                  : DatasetFormat::kCsv;
}

std::optional<DatasetFormat> FormatFromExtension(
    const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return DatasetFormat::kCsv;
  if (ext == ".bin" || ext == ".sclg") return DatasetFormat::kRawBinary;
  return std::nullopt;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read " + path.string());
  return std::move(buf).str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ParseError("cannot write " + path.string());
}

Dataset LoadDataset(const std::filesystem::path& path,
                    std::optional<DatasetFormat> format) {
  const std::string bytes = ReadFile(path);
  const auto fmt = format ? *format : DetectFormat(bytes);
  try {
    return fmt == DatasetFormat::kCsv ? ParseCsv(bytes) : ParseRawBinary(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void SaveDataset(const std::filesystem::path& path, const LogitMatrix& logits,
                 std::span<const int> labels, DatasetFormat format) {
  WriteFile(path, format == DatasetFormat::kCsv
                      ? FormatCsv(logits, labels)
                      : EncodeRawBinary(logits, labels));
}

}  // namespace selclass
