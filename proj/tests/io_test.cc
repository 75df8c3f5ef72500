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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "selclass/classifier.h"
#include "selclass/dataset_io.h"
#include "selclass/errors.h"
#include "selclass/histogram.h"
#include "selclass/split.h"
#include "selclass/synthetic.h"
#include "test_util.h"

namespace selclass {
namespace {

bool Contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

std::string ParseErrorMessage(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected ParseError";
  return "";
}

LogitMatrix Float32Logits(std::mt19937_64& rng, std::size_t rows,
                          std::size_t cols) {
  auto m = testing::RandomLogits(rng, rows, cols);
  std::vector<double> values;
  for (std::size_t i = 0; i < rows; ++i) {
    for (const double v : m.row(i)) values.push_back(static_cast<float>(v));
  }
  return LogitMatrix(rows, cols, std::move(values));
}

std::string Header(std::uint32_t n, std::uint32_t c,
                   std::uint16_t version = 1) {
  std::string out = "SCLG";
  auto put = [&out](std::uint64_t v, int bytes) {
    for (int b = 0; b < bytes; ++b)
      out.push_back(static_cast<char>(v >> (8 * b)));
  };
  put(version, 2);
  put(0, 2);
  put(n, 4);
  put(c, 4);
  return out;
}

TEST(CsvTest, SingleRow) {
  const auto data = ParseCsv("1.5,-0.5,2.0,2\n");
  ASSERT_EQ(data.logits.rows(), 1u);
  ASSERT_EQ(data.logits.cols(), 3u);
  EXPECT_EQ(data.logits.row(0)[0], 1.5);
  EXPECT_EQ(data.logits.row(0)[1], -0.5);
  EXPECT_EQ(data.logits.row(0)[2], 2.0);
  EXPECT_EQ(data.labels, Labels{2});
  EXPECT_EQ(ArgmaxPredict(data.logits), Predictions{2});
}

TEST(CsvTest, HeaderWhitespaceAndBlankLines) {
  const auto data = ParseCsv("z0,z1,label\n\n 1 , 2 ,1\r\n3,4,0\n\n");
  ASSERT_EQ(data.logits.rows(), 2u);
  EXPECT_EQ(data.logits.row(1)[0], 3.0);
  EXPECT_EQ(data.labels, (Labels{1, 0}));
}

TEST(CsvTest, ErrorsNameTheLine) {
  EXPECT_PRED2(Contains, ParseErrorMessage([] { ParseCsv("1,2,0\n3,4,2\n"); }),
               "line 2");
  EXPECT_PRED2(Contains, ParseErrorMessage([] { ParseCsv("1,2,0\n3,4,-1\n"); }),
               "line 2");
  EXPECT_PRED2(Contains, ParseErrorMessage([] { ParseCsv("1,2,0\n1,x,0\n"); }),
               "line 2");
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseCsv("1,2,0\n1,2,3,0\n"); }),
               "line 2");
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseCsv("1,2,0\n1,nan,0\n"); }),
               "line 2");
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseCsv("1,2,0\n1,2,0.5\n"); }),
               "line 2");
  EXPECT_PRED2(Contains, ParseErrorMessage([] { ParseCsv("1,0\n"); }),
               "line 1");
  EXPECT_THROW(ParseCsv(""), ParseError);
  EXPECT_THROW(ParseCsv("a,b,label\n"), ParseError);
}

TEST(CsvTest, RoundTripIsExact) {
  std::mt19937_64 rng(1);
  const auto logits = testing::RandomLogits(rng, 50, 7);
  const auto labels = testing::RandomLabels(rng, 50, 7);
  for (const bool header : {false, true}) {
    const auto back = ParseCsv(FormatCsv(logits, labels, header));
    EXPECT_EQ(back.logits, logits);
    EXPECT_EQ(back.labels, labels);
  }
}

TEST(RawBinaryTest, RoundTripAndLayout) {
  std::mt19937_64 rng(2);
  const auto logits = Float32Logits(rng, 20, 5);
  const auto labels = testing::RandomLabels(rng, 20, 5);
  const auto bytes = EncodeRawBinary(logits, labels);
  EXPECT_EQ(bytes.size(), 16u + 20 * 5 * 4 + 20 * 4);
  EXPECT_EQ(bytes.substr(0, 16), Header(20, 5));
  EXPECT_EQ(DetectFormat(bytes), DatasetFormat::kRawBinary);
  const auto back = ParseRawBinary(bytes);
  EXPECT_EQ(back.logits, logits);
  EXPECT_EQ(back.labels, labels);
}

TEST(RawBinaryTest, Errors) {
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseRawBinary(Header(0, 3)); }),
               "byte offset 8");
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseRawBinary(Header(1, 1)); }),
               "byte offset 12");
  EXPECT_PRED2(Contains,
               ParseErrorMessage([] { ParseRawBinary(Header(1, 2, 7)); }),
               "byte offset 4");
  EXPECT_THROW(ParseRawBinary("SCLG"), ParseError);
  EXPECT_THROW(ParseRawBinary(std::string(16, 'x')), ParseError);
  // Truncated payload.
  EXPECT_THROW(ParseRawBinary(Header(2, 2) + std::string(8, '\0')), ParseError);
  // Label 2 with C = 2.
  const LogitMatrix logits(1, 2, {0.5, 1.0});
  auto bytes = EncodeRawBinary(logits, Labels{1});
  bytes[bytes.size() - 4] = 2;
  EXPECT_PRED2(Contains, ParseErrorMessage([&] { ParseRawBinary(bytes); }),
               "byte offset 24");
  // A NaN logit (float32 bit pattern 0x7fc00000).
  bytes = EncodeRawBinary(logits, Labels{1});
  bytes[16] = 0;
  bytes[17] = 0;
  bytes[18] = static_cast<char>(0xc0);
  bytes[19] = 0x7f;
  EXPECT_PRED2(Contains, ParseErrorMessage([&] { ParseRawBinary(bytes); }),
               "byte offset 16");
}

TEST(DatasetFileTest, CsvAndBinaryLoadIdentically) {
  std::mt19937_64 rng(3);
  const auto logits = Float32Logits(rng, 40, 6);
  const auto labels = testing::RandomLabels(rng, 40, 6);
  const auto dir = std::filesystem::temp_directory_path() / "selclass_io_test";
  std::filesystem::create_directories(dir);
  SaveDataset(dir / "d.csv", logits, labels, DatasetFormat::kCsv);
  SaveDataset(dir / "d.bin", logits, labels, DatasetFormat::kRawBinary);
  const auto a = LoadDataset(dir / "d.csv");
  const auto b = LoadDataset(dir / "d.bin");
  EXPECT_EQ(a.logits, b.logits);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.logits, logits);

  WriteFile(dir / "bad.csv", "1,2,0\n1,2,5\n");
  const auto message = ParseErrorMessage([&] { LoadDataset(dir / "bad.csv"); });
  EXPECT_PRED2(Contains, message, "bad.csv");
  EXPECT_PRED2(Contains, message, "line 2");
  EXPECT_THROW(LoadDataset(dir / "missing.csv"), ParseError);
  std::filesystem::remove_all(dir);
}

TEST(DatasetFileTest, FormatFromExtension) {
  EXPECT_EQ(FormatFromExtension("a/b.csv"), DatasetFormat::kCsv);
  EXPECT_EQ(FormatFromExtension("b.bin"), DatasetFormat::kRawBinary);
  EXPECT_EQ(FormatFromExtension("b.sclg"), DatasetFormat::kRawBinary);
  EXPECT_EQ(FormatFromExtension("b.txt"), std::nullopt);
  EXPECT_EQ(DetectFormat("1,2,0\n"), DatasetFormat::kCsv);
}

// SplitMix64 finalizer written out independently.
std::uint64_t SplitMix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TEST(CounterRngTest, MatchesReferenceConstruction) {
  const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
  for (const std::uint64_t seed : {0ULL, 1ULL, 123456789ULL}) {
    for (const std::uint64_t stream : {0ULL, 5ULL, 1ULL << 40}) {
      const std::uint64_t key =
          SplitMix(SplitMix(seed + golden) ^ (stream * golden + 1));
      CounterRng rng(seed, stream);
      for (std::uint64_t i = 1; i <= 5; ++i) {
        EXPECT_EQ(rng.Next(), SplitMix(key + i * golden));
      }
    }
  }
  CounterRng pinned(0, 0);
  EXPECT_EQ(pinned.Next(), 9639420846141804449ULL);
}

TEST(CounterRngTest, DistributionMoments) {
  CounterRng rng(7, 3);
  const int n = 200000;
  std::vector<int> counts(10, 0);
  for (int i = 0; i < n; ++i) ++counts[rng.Below(10)];
  // Each count is Binomial(n, 0.1); 5 sigma.
  const double sigma = std::sqrt(n * 0.1 * 0.9);
  for (const int c : counts) EXPECT_NEAR(c, n * 0.1, 5 * sigma);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.Normal();
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sum_sq / n, 1.0, 5.0 * std::sqrt(2.0 / n));
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SplitTest, PartitionsIndices) {
  const auto split = MakeSplit(10, SplitSpec{3, 4, 2}, 0);
  EXPECT_EQ(split.tuning.size(), 3u);
  EXPECT_EQ(split.test.size(), 7u);
  std::vector<std::size_t> all = split.tuning;
  all.insert(all.end(), split.test.begin(), split.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(all[i], i);
  EXPECT_TRUE(std::is_sorted(split.tuning.begin(), split.tuning.end()));
  EXPECT_TRUE(std::is_sorted(split.test.begin(), split.test.end()));
}

TEST(SplitTest, DeterministicAndPinned) {
  const SplitSpec spec{20, 0, 2};
  const auto a = MakeSplit(100, spec, 0);
  EXPECT_EQ(a.tuning, MakeSplit(100, spec, 0).tuning);
  const std::vector<std::size_t> pinned = {0,  10, 37, 40, 44, 46, 47,
                                           49, 52, 59, 60, 76, 78, 80,
                                           82, 83, 87, 90, 91, 99};
  EXPECT_EQ(a.tuning, pinned);
  EXPECT_NE(a.tuning, MakeSplit(100, spec, 1).tuning);
  EXPECT_NE(a.tuning, MakeSplit(100, SplitSpec{20, 1, 2}, 0).tuning);
}

TEST(SplitTest, Validation) {
  EXPECT_THROW(MakeSplit(10, SplitSpec{0, 0, 1}, 0), ParameterError);
  EXPECT_THROW(MakeSplit(10, SplitSpec{10, 0, 1}, 0), ParameterError);
  EXPECT_THROW(MakeSplit(10, SplitSpec{3, 0, 1}, 1), ParameterError);
  EXPECT_THROW(SampleIndices(5, 6, 0, 0), ParameterError);
  EXPECT_EQ(SampleIndices(5, 5, 0, 0),
            (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(SplitTest, InclusionIsUniform) {
  // Every index is drawn with probability k / n.
  const std::size_t n = 20;
  const std::size_t k = 5;
  const int trials = 20000;
  std::vector<int> hits(n, 0);
  for (int t = 0; t < trials; ++t) {
    for (const auto i : SampleIndices(n, k, 11, t)) ++hits[i];
  }
  const double p = static_cast<double>(k) / n;
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (const int h : hits) EXPECT_NEAR(h, trials * p, 5 * sigma);
}

TEST(SyntheticTest, DeterministicFloat32Rows) {
  SyntheticModelSpec spec;
  spec.n = 500;
  spec.c = 10;
  spec.seed = 4;
  const auto a = GenerateSynthetic(spec);
  const auto b = GenerateSynthetic(spec);
  EXPECT_EQ(a.logits, b.logits);
  EXPECT_EQ(a.labels, b.labels);
  for (std::size_t i = 0; i < a.logits.rows(); ++i) {
    for (const double v : a.logits.row(i)) {
      ASSERT_EQ(v, static_cast<double>(static_cast<float>(v)));
    }
  }
  spec.seed = 5;
  EXPECT_NE(GenerateSynthetic(spec).logits, a.logits);
}

TEST(SyntheticTest, AccuracyNearTarget) {
  for (const double target : {0.5, 0.75, 0.9}) {
    SyntheticModelSpec spec;
    spec.n = 20000;
    spec.c = 50;
    spec.base_accuracy = target;
    spec.seed = 6;
    const auto data = GenerateSynthetic(spec);
    const double acc = Accuracy(ClassifierLosses(data.logits, data.labels));
    EXPECT_NEAR(acc, target, 0.02) << target;
  }
}

TEST(SyntheticTest, DistortionsKeepLabels) {
  SyntheticModelSpec spec;
  spec.n = 2000;
  spec.c = 20;
  spec.seed = 8;
  const auto plain = GenerateSynthetic(spec);
  for (const auto mode :
       {DistortionMode::kNormInflation, DistortionMode::kUnderconfidence}) {
    spec.mode = mode;
    const auto distorted = GenerateSynthetic(spec);
    EXPECT_EQ(distorted.labels, plain.labels);
    const auto p = ArgmaxPredict(plain.logits);
    const auto q = ArgmaxPredict(distorted.logits);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < p.size(); ++i) agree += p[i] == q[i];
    EXPECT_GE(agree, p.size() - 2);
  }
  spec.mode = DistortionMode::kUnderconfidence;
  const auto under = GenerateSynthetic(spec);
  EXPECT_NEAR(under.logits.row(0)[0],
              static_cast<float>(plain.logits.row(0)[0] / 3.0), 1e-5);
}

TEST(SyntheticTest, Validation) {
  SyntheticModelSpec spec;
  spec.c = 1;
  EXPECT_THROW(GenerateSynthetic(spec), ParameterError);
  spec = {};
  spec.base_accuracy = 1.0;
  EXPECT_THROW(GenerateSynthetic(spec), ParameterError);
  spec = {};
  spec.underconfidence_factor = 1.0;
  EXPECT_THROW(spec.Validate(), ParameterError);
  EXPECT_EQ(
      ParseDistortionMode(DistortionModeName(DistortionMode::kNormInflation)),
      DistortionMode::kNormInflation);
}

TEST(HistogramTest, ConstantInputFillsFirstBin) {
  const std::vector<double> scores(7, 0.3);
  const auto bins = ConfidenceHistogram(scores, 4);
  ASSERT_EQ(bins.size(), 4u);
  EXPECT_EQ(bins[0].count, 7u);
  for (std::size_t b = 1; b < 4; ++b) EXPECT_EQ(bins[b].count, 0u);
}

TEST(HistogramTest, CountsAreConserved) {
  std::mt19937_64 rng(9);
  const auto scores = testing::RandomScores(rng, 1000);
  for (const std::size_t nb : {1u, 3u, 17u, 1000u}) {
    const auto bins = ConfidenceHistogram(scores, nb);
    std::size_t total = 0;
    for (const auto& b : bins) total += b.count;
    EXPECT_EQ(total, scores.size());
    EXPECT_EQ(bins.front().lower,
              *std::min_element(scores.begin(), scores.end()));
    EXPECT_EQ(bins.back().upper,
              *std::max_element(scores.begin(), scores.end()));
  }
}

TEST(HistogramTest, UniformScoresSpreadEvenly) {
  std::mt19937_64 rng(10);
  const auto scores = testing::RandomScores(rng, 10000);
  const auto bins = ConfidenceHistogram(scores, 10);
  const double sigma = std::sqrt(10000 * 0.1 * 0.9);
  for (const auto& b : bins) EXPECT_NEAR(b.count, 1000.0, 5 * sigma);
}

TEST(HistogramTest, ErrorsAndFormat) {
  EXPECT_THROW(ConfidenceHistogram(std::vector<double>{1.0}, 0),
               ParameterError);
  EXPECT_THROW(ConfidenceHistogram({}, 3), ParameterError);
  EXPECT_THROW(ConfidenceHistogram(std::vector<double>{1.0, NAN}, 3),
               ParameterError);
  const auto bins = ConfidenceHistogram(std::vector<double>{0.0, 1.0}, 2);
  EXPECT_EQ(FormatHistogram(bins), "0 0.5 1\n0.5 1 1\n");
}

}  // namespace
}  // namespace selclass
