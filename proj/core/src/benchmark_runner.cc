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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "internal/parallel.h"
#include "selclass/errors.h"

namespace selclass {
namespace {

[[noreturn]] void RethrowNamed(const std::string& name) {
  const std::string prefix = "dataset '" + name + "': ";
  try {
    throw;
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(prefix + e.what(), e.row());
  } catch (const UndefinedMetricError& e) {
    throw UndefinedMetricError(prefix + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(prefix + e.what());
  } catch (const ParameterError& e) {
    throw ParameterError(prefix + e.what());
  } catch (const ParseError& e) {
    throw ParseError(prefix + e.what());
  }
}

std::string Fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string Compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string MeanStdCell(const std::optional<MeanStd>& v) {
  if (!v) return "undefined";
  return Fixed(v->mean, 4) + " +- " + Fixed(v->std, 4);
}

// Tuned hyperparameters in a few characters; "F" marks the MSP fallback.
std::string Hyperparameters(const SplitOutcome& split) {
  if (split.fallback_applied) return "F";
  if (const auto* spec = std::get_if<EstimatorSpec>(&split.method)) {
    if (const auto* ts =
            std::get_if<TemperatureTransform>(&spec->transform())) {
      return "T=" + Compact(ts->temperature);
    }
    if (const auto* pn = std::get_if<PNormTransform>(&spec->transform())) {
      if (!IsSoftmaxBased(spec->base())) return "p=" + std::to_string(pn->p);
      return "p=" + std::to_string(pn->p) + "/tau=" + Compact(pn->tau);
    }
    return "-";
  }
  if (const auto* ets = std::get_if<EtsParams>(&split.method)) {
    return "w1=" + Compact(ets->w1) + "/w2=" + Compact(ets->w2) +
           "/T=" + Compact(ets->temperature);
  }
  if (const auto* bk = std::get_if<BkParams>(&split.method)) {
    return "a=" + Compact(bk->a) + "/b=" + Compact(bk->b);
  }
  const auto& hts = std::get<HtsParams>(split.method);
  return "b=" + Compact(hts.b) + "/w=" + Compact(hts.w);
}

std::string PadRight(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

RunConfig RunConfig::Default() {
  RunConfig config;
  for (const auto base : kAllBaseEstimators) {
    MethodSelection m;
    m.estimator = base;
    m.transform = TransformKind::kRaw;
    config.methods.push_back(m);
    if (IsSoftmaxBased(base)) {
      m.transform = TransformKind::kTemperature;
      m.objective = Objective::kNll;
      config.methods.push_back(m);
      m.objective = Objective::kAurc;
      config.methods.push_back(m);
    }
    m.transform = TransformKind::kPNorm;
    m.objective = Objective::kAurc;
    config.methods.push_back(m);
  }
  return config;
}

void RunConfig::Validate() const {
  grids.Validate();
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (!seen.insert(m.Name()).second) {
      throw ParameterError("method '" + m.Name() + "' listed twice");
    }
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be finite and >= 0");
  }
  if (!(fallback_epsilon >= 0.0) || !std::isfinite(fallback_epsilon)) {
    throw ParameterError("fallback epsilon must be finite and >= 0");
  }
  if (split.tuning_size == 0)
    throw ParameterError("tuning size must be positive");
  if (split.repetitions == 0)
    throw ParameterError("repetitions must be positive");
  for (const double t : sac_targets) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw ParameterError("SAC targets must be in (0, 1]");
    }
  }
}

std::vector<ApgOutcome> AggregateApg(const std::vector<ModelOutcome>& models,
                                     const std::vector<std::string>& methods,
                                     double epsilon,
                                     std::vector<std::string>* warnings) {
  auto find = [](const ModelOutcome& model,
                 const std::string& name) -> const MethodOutcome* {
    for (const auto& m : model.methods) {
      if (m.method == name) return &m;
    }
    return nullptr;
  };

  std::size_t splits = 0;
  for (const auto& model : models) {
    const auto* msp = find(model, kMspRawName);
    if (msp == nullptr) {
      throw ParameterError("model '" + model.name + "' lacks " + kMspRawName);
    }
    splits = std::max(splits, msp->splits.size());
  }

  // NAURC is undefined exactly when the test split has no errors or no
  // correct predictions, which does not depend on the method.
  std::set<std::pair<std::size_t, std::size_t>> excluded;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto* msp = find(models[i], kMspRawName);
    for (std::size_t r = 0; r < msp->splits.size(); ++r) {
      if (!msp->splits[r].test.naurc) {
        excluded.insert({i, r});
        if (warnings != nullptr) {
          warnings->push_back("model '" + models[i].name +
                              "': NAURC undefined on split " +
                              std::to_string(r) + "; excluded from APG");
        }
      }
    }
  }

  std::vector<ApgOutcome> out;
  for (const auto& name : methods) {
    ApgOutcome apg;
    apg.method = name;
    for (std::size_t r = 0; r < splits; ++r) {
      std::vector<double> base;
      std::vector<double> method;
      for (std::size_t i = 0; i < models.size(); ++i) {
        const auto* msp = find(models[i], kMspRawName);
        const auto* m = find(models[i], name);
        if (m == nullptr || excluded.count({i, r}) != 0 ||
            r >= m->splits.size() || r >= msp->splits.size() ||
            !m->splits[r].test.naurc) {
          continue;
        }
        base.push_back(*msp->splits[r].test.naurc);
        method.push_back(*m->splits[r].test.naurc);
      }
      if (!base.empty()) {
        apg.per_split.push_back(AveragePositiveGain(base, method, epsilon));
      }
    }
    if (!apg.per_split.empty()) apg.summary = ComputeMeanStd(apg.per_split);
    out.push_back(std::move(apg));
  }
  return out;
}

BenchmarkReport RunBenchmark(const RunConfig& config,
                             const std::vector<NamedDataset>& datasets,
                             int jobs) {
  config.Validate();
  if (datasets.empty()) throw ParameterError("no datasets given");

  BenchmarkReport report;
  report.config = config;
  std::vector<MethodSelection> methods = config.methods;
  const auto msp_raw = MethodSelection::Parse(kMspRawName);
  if (std::find(methods.begin(), methods.end(), msp_raw) == methods.end()) {
    methods.insert(methods.begin(), msp_raw);
  }

  const std::size_t reps = config.split.repetitions;
  const std::size_t nm = methods.size();
  const std::size_t tasks = datasets.size() * reps;
  const int outer = internal::WorkerCount(tasks, jobs);
  const int inner = std::max(1, internal::ResolveJobs(jobs) / outer);

  std::vector<SplitOutcome> outcomes(tasks * nm);
  internal::ParallelFor(tasks, outer, [&](std::size_t task, int) {
    const auto& dataset = datasets[task / reps];
    const std::size_t rep = task % reps;
    try {
      const auto split =
          MakeSplit(dataset.data.logits.rows(), config.split, rep);
      const auto tune_logits = dataset.data.logits.SelectRows(split.tuning);
      const auto tune_labels = SelectLabels(dataset.data.labels, split.tuning);
      const auto test_logits = dataset.data.logits.SelectRows(split.test);
      const auto test_labels = SelectLabels(dataset.data.labels, split.test);
      const Losses test_losses = ClassifierLosses(test_logits, test_labels);
      for (std::size_t m = 0; m < nm; ++m) {
        auto result = ApplyFallback(Tune(methods[m], tune_logits, tune_labels,
                                         config.grids, TuneOptions{inner}),
                                    config.fallback_epsilon);
        auto& out = outcomes[task * nm + m];
        out.method = result.method;
        out.fallback_applied = result.fallback_applied;
        out.tuning_aurc = result.tuning_aurc;
        out.test = Evaluate(ApplyMethod(result.method, test_logits),
                            test_losses, config.sac_targets);
      }
    } catch (...) {
      RethrowNamed(dataset.name);
    }
  });

  std::vector<std::string> names;
  for (const auto& m : methods) names.push_back(m.Name());
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    ModelOutcome model;
    model.name = datasets[d].name;
    model.samples = datasets[d].data.logits.rows();
    for (std::size_t m = 0; m < nm; ++m) {
      MethodOutcome method;
      method.method = names[m];
      std::vector<double> naurc;
      for (std::size_t r = 0; r < reps; ++r) {
        method.splits.push_back(outcomes[(d * reps + r) * nm + m]);
        if (method.splits.back().test.naurc) {
          naurc.push_back(*method.splits.back().test.naurc);
        }
      }
      if (naurc.size() == reps) method.naurc = ComputeMeanStd(naurc);
      model.methods.push_back(std::move(method));
    }
    report.models.push_back(std::move(model));
  }
  report.apg =
      AggregateApg(report.models, names, config.epsilon, &report.warnings);
  return report;
}

std::string FormatBenchmarkTable(const BenchmarkReport& report) {
  std::map<std::string, const ApgOutcome*> apg;
  for (const auto& a : report.apg) apg[a.method] = &a;
  auto cell = [&](const std::string& name) -> std::string {
    const auto it = apg.find(name);
    if (it == apg.end()) return "-";
    return MeanStdCell(it->second->summary);
  };

  constexpr std::size_t kNameWidth = 16;
  constexpr std::size_t kCellWidth = 20;
  std::string out = "APG-NAURC vs MSP (mean +- std over splits, epsilon = " +
                    Compact(report.config.epsilon) + ")\n";
  out += PadRight("estimator", kNameWidth);
  for (const char* t : {"raw", "ts-nll", "ts-aurc", "pnorm"}) {
    out += PadRight(t, kCellWidth);
  }
  out += "\n";
  for (const auto base : kAllBaseEstimators) {
    const std::string b(BaseEstimatorName(base));
    out += PadRight(b, kNameWidth);
    for (const char* t : {"raw", "ts-nll", "ts-aurc", "pnorm"}) {
      out += PadRight(cell(b + "/" + t), kCellWidth);
    }
    out += "\n";
  }
  for (const char* kind : {"ets", "bk", "hts"}) {
    if (apg.count(kind) == 0) continue;
    out += PadRight(kind, kNameWidth) + cell(kind) + "\n";
  }

  for (const auto& model : report.models) {
    out += "\nmodel " + model.name + " (N = " + std::to_string(model.samples) +
           ")\n";
    for (const auto& method : model.methods) {
      out += PadRight(method.method, 24) +
             PadRight("NAURC " + MeanStdCell(method.naurc), 30);
      std::string hyper;
      for (std::size_t r = 0; r < method.splits.size(); ++r) {
        if (r > 0) hyper += " ";
        hyper += Hyperparameters(method.splits[r]);
      }
      out += hyper + "\n";
    }
  }
  for (const auto& w : report.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace selclass
