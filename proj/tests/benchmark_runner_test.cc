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

#include "selclass/benchmark_runner.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "selclass/errors.h"
#include "selclass/serialization.h"
#include "selclass/synthetic.h"
#include "test_util.h"

namespace selclass {
namespace {

NamedDataset Synthetic(const std::string& name, std::uint64_t seed,
                       DistortionMode mode, std::size_t n = 600,
                       std::size_t c = 10) {
  SyntheticModelSpec spec;
  spec.n = n;
  spec.c = c;
  spec.mode = mode;
  spec.seed = seed;
  return {name, GenerateSynthetic(spec)};
}

RunConfig SmallConfig(std::vector<std::string> methods, std::size_t reps) {
  RunConfig config = RunConfig::Default();
  config.methods.clear();
  for (const auto& m : methods)
    config.methods.push_back(MethodSelection::Parse(m));
  config.grids.temperatures = StepGrid(0.1, 3.0, 0.1);
  config.grids.ets_weights = StepGrid(0.0, 1.0, 0.25);
  config.grids.bk_weights = StepGrid(-1.0, 1.0, 0.25);
  config.grids.hts_b = StepGrid(-3.0, 1.0, 0.5);
  config.grids.hts_w = StepGrid(-1.0, 1.0, 0.5);
  config.split = SplitSpec{200, 3, reps};
  return config;
}

MethodOutcome Outcome(const std::string& name, std::vector<double> naurc) {
  MethodOutcome m;
  m.method = name;
  for (const double v : naurc) {
    SplitOutcome s;
    s.test.naurc = v;
    m.splits.push_back(s);
  }
  return m;
}

TEST(AggregateApgTest, CountsGainsAboveEpsilon) {
  std::vector<ModelOutcome> models;
  const double method_naurc[] = {0.48, 0.495, 0.53};
  for (int i = 0; i < 3; ++i) {
    ModelOutcome model;
    model.name = "m" + std::to_string(i);
    model.methods = {Outcome(kMspRawName, {0.5}),
                     Outcome("x", {method_naurc[i]})};
    models.push_back(model);
  }
  std::vector<std::string> warnings;
  const auto apg = AggregateApg(models, {kMspRawName, "x"}, 0.01, &warnings);
  ASSERT_EQ(apg.size(), 2u);
  EXPECT_EQ(apg[0].per_split, std::vector<double>{0.0});
  ASSERT_EQ(apg[1].per_split.size(), 1u);
  EXPECT_NEAR(apg[1].per_split[0], 0.02 / 3.0, 1e-15);
  ASSERT_TRUE(apg[1].summary);
  EXPECT_EQ(apg[1].summary->std, 0.0);
  EXPECT_TRUE(warnings.empty());
}

TEST(AggregateApgTest, UndefinedMspNaurcIsExcludedWithWarning) {
  ModelOutcome good;
  good.name = "good";
  good.methods = {Outcome(kMspRawName, {0.5, 0.5}), Outcome("x", {0.4, 0.45})};
  ModelOutcome bad;
  bad.name = "perfect";
  bad.methods = {Outcome(kMspRawName, {0.5, 0.5}), Outcome("x", {0.5, 0.5})};
  bad.methods[0].splits[1].test.naurc.reset();
  bad.methods[1].splits[1].test.naurc.reset();
  std::vector<std::string> warnings;
  const auto apg = AggregateApg({good, bad}, {"x"}, 0.01, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("perfect"), std::string::npos);
  EXPECT_NE(warnings[0].find("split 1"), std::string::npos);
  ASSERT_EQ(apg[0].per_split.size(), 2u);
  EXPECT_NEAR(apg[0].per_split[0], 0.05, 1e-15);  // (0.1 + 0) / 2
  EXPECT_NEAR(apg[0].per_split[1], 0.05, 1e-15);  // good only
}

TEST(AggregateApgTest, RequiresMspBaseline) {
  ModelOutcome model;
  model.name = "m";
  model.methods = {Outcome("x", {0.3})};
  EXPECT_THROW(AggregateApg({model}, {"x"}, 0.0, nullptr), ParameterError);
}

TEST(RunBenchmarkTest, MspAgainstItself) {
  const auto data = Synthetic("a", 1, DistortionMode::kNone);
  const auto report = RunBenchmark(SmallConfig({"msp/raw"}, 1), {data});
  ASSERT_EQ(report.models.size(), 1u);
  ASSERT_EQ(report.models[0].methods.size(), 1u);
  const auto& split = report.models[0].methods[0].splits[0];
  EXPECT_EQ(split.test.samples, 400u);
  EXPECT_EQ(split.test.accuracy, 1.0 - split.test.risk);
  // No strict improvement over itself, so the fallback flag is set.
  EXPECT_TRUE(split.fallback_applied);
  EXPECT_EQ(split.method, MethodSpec(EstimatorSpec::MspFallback()));
  ASSERT_EQ(report.apg.size(), 1u);
  EXPECT_EQ(report.apg[0].per_split, std::vector<double>{0.0});

  // Matches a direct evaluation of the test split.
  const auto s = MakeSplit(600, report.config.split, 0);
  const auto test = data.data.logits.SelectRows(s.test);
  const auto losses =
      ClassifierLosses(test, SelectLabels(data.data.labels, s.test));
  EXPECT_EQ(
      split.test,
      Evaluate(ApplyMethod(EstimatorSpec::Make(BaseEstimator::kMsp), test),
               losses, report.config.sac_targets));
}

TEST(RunBenchmarkTest, AddsMspBaseline) {
  const auto report = RunBenchmark(SmallConfig({"max-logit/raw"}, 1),
                                   {Synthetic("a", 1, DistortionMode::kNone)});
  ASSERT_EQ(report.models[0].methods.size(), 2u);
  EXPECT_EQ(report.models[0].methods[0].method, "msp/raw");
}

TEST(RunBenchmarkTest, DeterministicAcrossRunsAndJobs) {
  const std::vector<NamedDataset> data = {
      Synthetic("plain", 2, DistortionMode::kNone),
      Synthetic("inflated", 3, DistortionMode::kNormInflation),
      Synthetic("under", 4, DistortionMode::kUnderconfidence)};
  const auto config = SmallConfig({"msp/ts-aurc", "max-logit/pnorm",
                                   "neg-entropy/ts-nll", "bk", "ets", "hts"},
                                  3);
  const auto a = RunBenchmark(config, data, 1);
  const auto b = RunBenchmark(config, data, 1);
  const auto c = RunBenchmark(config, data, 4);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(SerializeBenchmarkReport(a), SerializeBenchmarkReport(c));
  EXPECT_EQ(FormatBenchmarkTable(a), FormatBenchmarkTable(c));

  // Summaries agree with their per-split values.
  for (const auto& model : a.models) {
    for (const auto& method : model.methods) {
      std::vector<double> values;
      for (const auto& s : method.splits) values.push_back(*s.test.naurc);
      ASSERT_TRUE(method.naurc);
      EXPECT_EQ(*method.naurc, ComputeMeanStd(values));
      for (const auto& s : method.splits) {
        const bool is_fallback =
            std::holds_alternative<EstimatorSpec>(s.method) &&
            std::get<EstimatorSpec>(s.method).fallback_applied();
        EXPECT_EQ(s.fallback_applied, is_fallback);
      }
    }
  }
  for (const auto& apg : a.apg) {
    ASSERT_EQ(apg.per_split.size(), 3u);
    EXPECT_EQ(*apg.summary, ComputeMeanStd(apg.per_split));
  }
}

TEST(RunBenchmarkTest, TableMarksFallback) {
  // With two classes every temperature ranks alike, so TS never beats MSP.
  std::mt19937_64 rng(5);
  const auto logits = testing::RandomLogits(rng, 300, 2, 0.05);
  NamedDataset data{"binary", {logits, testing::NoisyLabels(rng, logits, 0.7)}};
  const auto report = RunBenchmark(SmallConfig({"msp/ts-aurc"}, 2), {data});
  const auto& ts = report.models[0].methods[1];
  EXPECT_EQ(ts.method, "msp/ts-aurc");
  EXPECT_TRUE(ts.splits[0].fallback_applied);
  const auto table = FormatBenchmarkTable(report);
  EXPECT_NE(table.find("F F"), std::string::npos) << table;
  EXPECT_NE(table.find("msp "), std::string::npos);
  EXPECT_NE(table.find("0.0000 +- 0.0000"), std::string::npos) << table;
}

TEST(RunBenchmarkTest, UndefinedNaurcWarns) {
  // Labels equal the argmax: no test errors.
  std::mt19937_64 rng(6);
  const auto logits = testing::RandomLogits(rng, 300, 4);
  NamedDataset perfect{"perfect", {logits, ArgmaxPredict(logits)}};
  const auto report = RunBenchmark(
      SmallConfig({"msp/raw"}, 1),
      {perfect, Synthetic("ok", 7, DistortionMode::kNone, 300, 4)});
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("perfect"), std::string::npos);
  EXPECT_FALSE(report.models[0].methods[0].naurc);
  EXPECT_NE(FormatBenchmarkTable(report).find("warning: "), std::string::npos);
}

TEST(RunBenchmarkTest, ErrorsNameTheDataset) {
  auto data = Synthetic("tiny", 8, DistortionMode::kNone, 100, 4);
  try {
    RunBenchmark(SmallConfig({"msp/raw"}, 1), {data});
    FAIL() << "expected ParameterError";
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("dataset 'tiny'"), std::string::npos);
  }
  EXPECT_THROW(RunBenchmark(SmallConfig({"msp/raw"}, 1), {}), ParameterError);
}

TEST(RunConfigTest, DefaultsAndValidation) {
  const auto config = RunConfig::Default();
  EXPECT_EQ(config.methods.size(), 6u + 6u + 4u + 4u);
  EXPECT_EQ(config.split.tuning_size, 5000u);
  EXPECT_EQ(config.split.repetitions, 10u);
  EXPECT_EQ(config.epsilon, 0.01);
  EXPECT_NO_THROW(config.Validate());
  auto bad = config;
  bad.methods.push_back(bad.methods.front());
  EXPECT_THROW(bad.Validate(), ParameterError);
  bad = config;
  bad.fallback_epsilon = -0.1;
  EXPECT_THROW(bad.Validate(), ParameterError);
}

}  // namespace
}  // namespace selclass
