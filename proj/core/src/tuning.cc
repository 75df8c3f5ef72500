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

#include "selclass/tuning.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "internal/parallel.h"
#include "internal/rank_sort.h"
#include "internal/scoring.h"
#include "selclass/errors.h"
#include "selclass/metrics.h"
#include "selclass/split.h"

namespace selclass {
namespace {

using internal::RowStats;

constexpr double kTieTolerance = 1e-12;

// Tie rule for T and tau: closest to 1, then the smaller value.
bool PreferScale(double a, double b) {
  const double da = std::abs(a - 1.0);
  const double db = std::abs(b - 1.0);
  if (std::abs(da - db) > kTieTolerance) return da < db;
  return a < b;
}

template <typename T>
void CheckGrid(const std::vector<T>& grid, const char* name) {
  if (grid.empty()) {
    throw ParameterError(std::string(name) + " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(static_cast<double>(grid[i]))) {
      throw ParameterError(std::string(name) + " grid has a non-finite value");
    }
    if (i > 0 && !(grid[i - 1] < grid[i])) {
      throw ParameterError(std::string(name) +
                           " grid must be strictly increasing");
    }
  }
}

template <typename T>
void CheckRange(const std::vector<T>& grid, double lo, double hi,
                const char* name) {
  CheckGrid(grid, name);
  if (grid.front() < lo || grid.back() > hi) {
    throw ParameterError(std::string(name) + " grid leaves [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void CheckTemperatures(std::span<const double> temperatures, const char* name) {
  CheckGrid(std::vector<double>(temperatures.begin(), temperatures.end()),
            name);
  if (!(temperatures.front() > 0.0)) {
    throw ParameterError(std::string(name) + " values must be positive");
  }
}

template <typename T>
bool AtEdge(const std::vector<T>& grid, std::size_t index) {
  return grid.size() > 1 && (index == 0 || index + 1 == grid.size());
}

bool AtEdge(std::span<const double> grid, std::size_t index) {
  return grid.size() > 1 && (index == 0 || index + 1 == grid.size());
}

struct Scratch {
  internal::RankSorter sorter;
  std::vector<double> scores;
};

std::vector<Scratch> MakeScratch(std::size_t candidates, int jobs,
                                 std::size_t scores) {
  std::vector<Scratch> out(internal::WorkerCount(candidates, jobs));
  for (auto& s : out) s.scores.resize(scores);
  return out;
}

double MspAurc(const LogitMatrix& logits,
               std::span<const std::uint8_t> losses) {
  return Aurc(ApplyEstimator(EstimatorSpec::Make(BaseEstimator::kMsp), logits),
              losses);
}

// ApplyEstimator, except that rows with a zero p-norm keep their logits.
Confidences ScoreTolerant(const EstimatorSpec& spec,
                          const LogitMatrix& logits) {
  Confidences out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    auto scale = internal::TransformScale(spec.transform(), row);
    if (!scale) scale = 1.0 / std::get<PNormTransform>(spec.transform()).tau;
    out[i] = internal::ScoreScaled(spec.base(), row,
                                   internal::ComputeRowStats(row), *scale);
  }
  return out;
}

// Index of the strict minimum; ties keep the earliest candidate.
std::size_t ArgminFirst(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

// Index of the minimum; equal values are resolved by PreferScale.
std::size_t ArgminScale(std::span<const double> values,
                        std::span<const double> scales) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best] ||
        (values[i] == values[best] && PreferScale(scales[i], scales[best]))) {
      best = i;
    }
  }
  return best;
}

void CheckSoftmaxBase(BaseEstimator base) {
  if (!IsSoftmaxBased(base)) {
    throw ParameterError("temperature scaling does not change the ranking of " +
                         std::string(BaseEstimatorName(base)));
  }
}

double NllTerm(std::span<const double> row, const RowStats& stats, int label,
               double beta) {
  const auto sums = internal::ScaledSoftmaxSums(row, stats.max, beta);
  return std::log(sums.sum) - beta * (row[label] - stats.max);
}

std::size_t ComputeDegenerateRows(const LogitMatrix& logits) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    if (LogitPNorm(logits.row(i), 1) == 0.0) ++count;
  }
  return count;
}

// Candidates are scored in groups, a block of rows at a time, so the rows
// stay in cache across the group. Per-row arithmetic is the same as one
// candidate at a time.
constexpr std::size_t kBlockElements = 1 << 16;
constexpr std::size_t kMaxGroupScores = std::size_t{1} << 22;
constexpr std::size_t kMaxGroup = 32;

std::size_t GroupSize(std::size_t candidates, std::size_t scores_per_candidate,
                      int jobs) {
  std::size_t group = std::min(
      kMaxGroup,
      std::max<std::size_t>(
          1, kMaxGroupScores / std::max<std::size_t>(1, scores_per_candidate)));
  // Leave a few groups per worker for load balance.
  const auto workers = static_cast<std::size_t>(internal::ResolveJobs(jobs));
  const std::size_t balanced = (candidates + 4 * workers - 1) / (4 * workers);
  return std::max<std::size_t>(1, std::min(group, balanced));
}

std::size_t RowBlock(const LogitMatrix& logits) {
  return std::max<std::size_t>(1, kBlockElements / logits.cols());
}

// Writes the score of base b for candidate first + g at row i to
// scores[(g * bases.size() + b) * n + i]. beta(c, i) gives the row scale.
template <typename BetaFn>
void ScoreSoftmaxGroup(const LogitMatrix& logits,
                       std::span<const RowStats> stats,
                       std::span<const BaseEstimator> bases, std::size_t first,
                       std::size_t count, BetaFn&& beta, double* scores) {
  const std::size_t n = logits.rows();
  const std::size_t nb = bases.size();
  const std::size_t block = RowBlock(logits);
  for (std::size_t i0 = 0; i0 < n; i0 += block) {
    const std::size_t i1 = std::min(n, i0 + block);
    for (std::size_t g = 0; g < count; ++g) {
      double* out = scores + g * nb * n;
      for (std::size_t i = i0; i < i1; ++i) {
        const double b_i = beta(first + g, i);
        const auto sums =
            internal::ScaledSoftmaxSums(logits.row(i), stats[i].max, b_i);
        for (std::size_t b = 0; b < nb; ++b) {
          out[b * n + i] =
              internal::SoftmaxScoreFromSums(bases[b], sums, stats[i], b_i);
        }
      }
    }
  }
}

}  // namespace

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kNll ? "nll" : "aurc";
}

std::optional<Objective> ParseObjective(std::string_view name) {
  if (name == "nll") return Objective::kNll;
  if (name == "aurc") return Objective::kAurc;
  return std::nullopt;
}

std::vector<double> StepGrid(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw ParameterError("invalid grid range");
  }
  const auto count =
      static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> out(count);
  const double inv = 1.0 / step;
  const double inv_rounded = std::round(inv);
  if (std::abs(inv - inv_rounded) < 1e-9) {
    // Divide integers so that 0.07 is the double nearest to 0.07.
    const double first = std::round(lo * inv_rounded);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = (first + static_cast<double>(i)) / inv_rounded;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = lo + static_cast<double>(i) * step;
    }
  }
  return out;
}

GridSpec GridSpec::Default() {
  GridSpec grid;
  grid.temperatures = StepGrid(0.01, 3.0, 0.01);
  grid.p_values.resize(11);
  std::iota(grid.p_values.begin(), grid.p_values.end(), 0);
  grid.ets_weights = StepGrid(0.0, 1.0, 0.01);
  grid.bk_weights = StepGrid(-1.0, 1.0, 0.01);
  grid.hts_b = StepGrid(-3.0, 1.0, 0.01);
  grid.hts_w = StepGrid(-1.0, 1.0, 0.01);
  return grid;
}

void GridSpec::Validate() const {
  CheckTemperatures(temperatures, "temperature");
  CheckGrid(p_values, "p");
  if (p_values.front() < 0) throw ParameterError("p values must be >= 0");
  CheckRange(ets_weights, 0.0, 1.0, "ETS weight");
  CheckRange(bk_weights, -1.0, 1.0, "BK weight");
  CheckRange(hts_b, -3.0, 1.0, "HTS b");
  CheckRange(hts_w, -1.0, 1.0, "HTS w");
}

double NegativeLogLikelihood(const LogitMatrix& logits,
                             std::span<const int> labels, double temperature) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ParameterError("temperature must be positive and finite");
  }
  const double beta = 1.0 / temperature;
  double total = 0.0;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    total += NllTerm(row, internal::ComputeRowStats(row), labels[i], beta);
  }
  return total / static_cast<double>(logits.rows());
}

std::vector<TuneResult> TuneTemperatureBatch(
    std::span<const BaseEstimator> bases, const LogitMatrix& logits,
    std::span<const int> labels, std::span<const double> temperatures,
    Objective objective, const TuneOptions& options) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  CheckTemperatures(temperatures, "temperature");
  for (const auto base : bases) CheckSoftmaxBase(base);
  if (bases.empty()) return {};

  const std::size_t n = logits.rows();
  const std::size_t nb = bases.size();
  const std::size_t nc = temperatures.size();
  const Losses losses = ClassifierLosses(logits, labels);
  const auto stats = internal::ComputeRowStats(logits);
  const bool by_nll = objective == Objective::kNll;

  std::vector<double> values(nc * (by_nll ? 1 : nb));
  const std::size_t group = GroupSize(nc, by_nll ? n : n * nb, options.jobs);
  const std::size_t groups = (nc + group - 1) / group;
  auto scratch = MakeScratch(groups, options.jobs, by_nll ? 0 : group * n * nb);
  internal::ParallelFor(groups, options.jobs, [&](std::size_t k, int worker) {
    const std::size_t first = k * group;
    const std::size_t count = std::min(group, nc - first);
    if (by_nll) {
      std::vector<double> totals(count, 0.0);
      const std::size_t block = RowBlock(logits);
      for (std::size_t i0 = 0; i0 < n; i0 += block) {
        const std::size_t i1 = std::min(n, i0 + block);
        for (std::size_t g = 0; g < count; ++g) {
          const double beta = 1.0 / temperatures[first + g];
          for (std::size_t i = i0; i < i1; ++i) {
            totals[g] += NllTerm(logits.row(i), stats[i], labels[i], beta);
          }
        }
      }
      for (std::size_t g = 0; g < count; ++g) {
        values[first + g] = totals[g] / static_cast<double>(n);
      }
      return;
    }
    auto& s = scratch[worker];
    ScoreSoftmaxGroup(
        logits, stats, bases, first, count,
        [&](std::size_t c, std::size_t) { return 1.0 / temperatures[c]; },
        s.scores.data());
    for (std::size_t g = 0; g < count; ++g) {
      for (std::size_t b = 0; b < nb; ++b) {
        const std::span<const double> scores(s.scores.data() + (g * nb + b) * n,
                                             n);
        values[(first + g) * nb + b] =
            internal::AurcFromOrder(s.sorter.Sort(scores), losses);
      }
    }
  });

  const double msp_aurc = MspAurc(logits, losses);
  std::vector<TuneResult> out;
  out.reserve(nb);
  std::vector<double> column(nc);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t c = 0; c < nc; ++c) {
      column[c] = by_nll ? values[c] : values[c * nb + b];
    }
    const std::size_t best = ArgminScale(column, temperatures);
    const auto spec =
        EstimatorSpec::Make(bases[b], TemperatureTransform{temperatures[best]});
    TuneResult result;
    result.method = spec;
    result.objective = objective;
    result.objective_value = column[best];
    result.tuning_aurc = Aurc(ApplyEstimator(spec, logits), losses);
    result.msp_tuning_aurc = msp_aurc;
    result.diagnostics.candidates_evaluated = nc;
    result.diagnostics.edge_hit = AtEdge(temperatures, best);
    out.push_back(std::move(result));
  }
  return out;
}

TuneResult TuneTemperature(BaseEstimator base, const LogitMatrix& logits,
                           std::span<const int> labels,
                           std::span<const double> temperatures,
                           Objective objective, const TuneOptions& options) {
  const BaseEstimator bases[] = {base};
  return TuneTemperatureBatch(bases, logits, labels, temperatures, objective,
                              options)
      .front();
}

std::vector<TuneResult> TunePNormBatch(std::span<const BaseEstimator> bases,
                                       const LogitMatrix& logits,
                                       std::span<const int> labels,
                                       std::span<const int> p_values,
                                       std::span<const double> taus,
                                       const TuneOptions& options) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  const std::vector<int> p_grid(p_values.begin(), p_values.end());
  CheckGrid(p_grid, "p");
  if (p_grid.front() < 0) throw ParameterError("p values must be >= 0");
  CheckTemperatures(taus, "tau");
  if (bases.empty()) return {};

  std::vector<BaseEstimator> soft_bases;
  std::vector<BaseEstimator> logit_bases;
  for (const auto base : bases) {
    (IsSoftmaxBased(base) ? soft_bases : logit_bases).push_back(base);
  }

  const std::size_t n = logits.rows();
  const std::size_t np = p_grid.size();
  const std::size_t nt = taus.size();
  const Losses losses = ClassifierLosses(logits, labels);
  const auto stats = internal::ComputeRowStats(logits);

  // Norms per p; zero rows are left unnormalized.
  std::vector<double> norms(np * n);
  for (std::size_t pi = 0; pi < np; ++pi) {
    for (std::size_t i = 0; i < n; ++i) {
      const double norm = LogitPNorm(logits.row(i), p_grid[pi]);
      norms[pi * n + i] = norm == 0.0 ? 1.0 : norm;
    }
  }
  const std::size_t degenerate_rows = ComputeDegenerateRows(logits);

  // Softmax bases: candidate (p, tau).
  const std::size_t ns = soft_bases.size();
  std::vector<double> soft_aurc(np * nt * ns);
  if (ns > 0) {
    const std::size_t nc = np * nt;
    const std::size_t group = GroupSize(nc, n * ns, options.jobs);
    const std::size_t groups = (nc + group - 1) / group;
    auto scratch = MakeScratch(groups, options.jobs, group * n * ns);
    internal::ParallelFor(groups, options.jobs, [&](std::size_t k, int worker) {
      const std::size_t first = k * group;
      const std::size_t count = std::min(group, nc - first);
      auto& s = scratch[worker];
      ScoreSoftmaxGroup(
          logits, stats, soft_bases, first, count,
          [&](std::size_t c, std::size_t i) {
            return 1.0 / (taus[c % nt] * norms[(c / nt) * n + i]);
          },
          s.scores.data());
      for (std::size_t g = 0; g < count; ++g) {
        for (std::size_t b = 0; b < ns; ++b) {
          const std::span<const double> scores(
              s.scores.data() + (g * ns + b) * n, n);
          soft_aurc[(first + g) * ns + b] =
              internal::AurcFromOrder(s.sorter.Sort(scores), losses);
        }
      }
    });
  }

  // Logit bases: candidate p, tau fixed at 1.
  const std::size_t nl = logit_bases.size();
  std::vector<double> logit_aurc(np * nl);
  if (nl > 0) {
    auto scratch = MakeScratch(np, options.jobs, n);
    internal::ParallelFor(np, options.jobs, [&](std::size_t pi, int worker) {
      auto& s = scratch[worker];
      for (std::size_t b = 0; b < nl; ++b) {
        for (std::size_t i = 0; i < n; ++i) {
          const double beta = 1.0 / (1.0 * norms[pi * n + i]);
          s.scores[i] = internal::ScoreScaled(logit_bases[b], logits.row(i),
                                              stats[i], beta);
        }
        logit_aurc[pi * nl + b] =
            internal::AurcFromOrder(s.sorter.Sort(s.scores), losses);
      }
    });
  }

  const double msp_aurc = MspAurc(logits, losses);
  std::vector<TuneResult> out;
  out.reserve(bases.size());
  std::size_t soft_index = 0;
  std::size_t logit_index = 0;
  std::vector<double> column;
  for (const auto base : bases) {
    std::size_t best_p = 0;
    std::size_t best_t = 0;
    double best = std::numeric_limits<double>::infinity();
    TuneResult result;
    if (IsSoftmaxBased(base)) {
      const std::size_t b = soft_index++;
      column.resize(nt);
      for (std::size_t pi = 0; pi < np; ++pi) {
        for (std::size_t t = 0; t < nt; ++t) {
          column[t] = soft_aurc[(pi * nt + t) * ns + b];
        }
        const std::size_t t = ArgminScale(column, taus);
        if (pi == 0 || column[t] < best) {
          best = column[t];
          best_p = pi;
          best_t = t;
        }
      }
      result.diagnostics.candidates_evaluated = np * nt;
      result.diagnostics.edge_hit = AtEdge(taus, best_t);
    } else {
      const std::size_t b = logit_index++;
      column.resize(np);
      for (std::size_t pi = 0; pi < np; ++pi)
        column[pi] = logit_aurc[pi * nl + b];
      best_p = ArgminFirst(column);
      best = column[best_p];
      result.diagnostics.candidates_evaluated = np;
    }
    const auto spec = EstimatorSpec::Make(
        base, PNormTransform{p_grid[best_p],
                             IsSoftmaxBased(base) ? taus[best_t] : 1.0});
    result.method = spec;
    result.objective = Objective::kAurc;
    result.objective_value = best;
    result.tuning_aurc = Aurc(ScoreTolerant(spec, logits), losses);
    result.msp_tuning_aurc = msp_aurc;
    result.diagnostics.degenerate_rows = degenerate_rows;
    out.push_back(std::move(result));
  }
  return out;
}

TuneResult TunePNorm(BaseEstimator base, const LogitMatrix& logits,
                     std::span<const int> labels, std::span<const int> p_values,
                     std::span<const double> taus, const TuneOptions& options) {
  const BaseEstimator bases[] = {base};
  return TunePNormBatch(bases, logits, labels, p_values, taus, options).front();
}

std::string_view TunableKindName(TunableKind kind) {
  switch (kind) {
    case TunableKind::kEts:
      return "ets";
    case TunableKind::kBk:
      return "bk";
    case TunableKind::kHts:
      return "hts";
  }
  return "";
}

std::optional<TunableKind> ParseTunableKind(std::string_view name) {
  if (name == "ets") return TunableKind::kEts;
  if (name == "bk") return TunableKind::kBk;
  if (name == "hts") return TunableKind::kHts;
  return std::nullopt;
}

TuneResult TuneTunable(TunableKind kind, const LogitMatrix& logits,
                       std::span<const int> labels, const GridSpec& grid,
                       const TuneOptions& options) {
  ValidateLabels(labels, logits.rows(), logits.cols());
  grid.Validate();

  const std::size_t n = logits.rows();
  const Losses losses = ClassifierLosses(logits, labels);
  const auto stats = internal::ComputeRowStats(logits);

  const std::vector<double>* first = nullptr;
  const std::vector<double>* second = nullptr;
  double ets_temperature = 1.0;
  // Per-row quantities that do not depend on the candidate.
  std::vector<double> pre_a(n);
  std::vector<double> pre_b(n);
  std::vector<internal::BkTerms> bk_terms;
  switch (kind) {
    case TunableKind::kEts: {
      first = &grid.ets_weights;
      second = &grid.ets_weights;
      const auto ts =
          TuneTemperature(BaseEstimator::kMsp, logits, labels,
                          grid.temperatures, Objective::kNll, options);
      ets_temperature = std::get<TemperatureTransform>(
                            std::get<EstimatorSpec>(ts.method).transform())
                            .temperature;
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = logits.row(i);
        pre_a[i] = internal::ScoreScaled(BaseEstimator::kMsp, row, stats[i],
                                         1.0 / ets_temperature);
        pre_b[i] =
            internal::ScoreScaled(BaseEstimator::kMsp, row, stats[i], 1.0);
      }
      break;
    }
    case TunableKind::kBk:
      first = &grid.bk_weights;
      second = &grid.bk_weights;
      bk_terms.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        bk_terms[i] = internal::ComputeBkTerms(logits.row(i), stats[i]);
      }
      break;
    case TunableKind::kHts:
      first = &grid.hts_b;
      second = &grid.hts_w;
      for (std::size_t i = 0; i < n; ++i) {
        pre_a[i] = internal::MeanEntropy(logits.row(i), stats[i]);
      }
      break;
  }

  const std::size_t n2 = second->size();
  const std::size_t nc = first->size() * n2;
  std::vector<double> aurc(nc);
  auto scratch = MakeScratch(nc, options.jobs, n);
  internal::ParallelFor(nc, options.jobs, [&](std::size_t c, int worker) {
    const double x = (*first)[c / n2];
    const double y = (*second)[c % n2];
    auto& s = scratch[worker];
    switch (kind) {
      case TunableKind::kEts:
        for (std::size_t i = 0; i < n; ++i) {
          s.scores[i] = internal::CombineEts(pre_a[i], pre_b[i], x, y);
        }
        break;
      case TunableKind::kBk:
        for (std::size_t i = 0; i < n; ++i) {
          s.scores[i] = internal::CombineBk(bk_terms[i], x, y);
        }
        break;
      case TunableKind::kHts:
        for (std::size_t i = 0; i < n; ++i) {
          const double t =
              internal::HtsTemperatureFromEntropy(pre_a[i], x, y, nullptr);
          s.scores[i] = internal::ScoreScaled(BaseEstimator::kMsp,
                                              logits.row(i), stats[i], 1.0 / t);
        }
        break;
    }
    aurc[c] = internal::AurcFromOrder(s.sorter.Sort(s.scores), losses);
  });

  const std::size_t best = ArgminFirst(aurc);
  const double x = (*first)[best / n2];
  const double y = (*second)[best % n2];
  TuneResult result;
  switch (kind) {
    case TunableKind::kEts:
      result.method = EtsParams{x, y, ets_temperature};
      break;
    case TunableKind::kBk:
      result.method = BkParams{x, y};
      break;
    case TunableKind::kHts:
      result.method = HtsParams{x, y};
      break;
  }
  ScoringDiagnostics scoring;
  result.objective = Objective::kAurc;
  result.objective_value = aurc[best];
  result.tuning_aurc =
      Aurc(ApplyMethod(result.method, logits, &scoring), losses);
  result.msp_tuning_aurc = MspAurc(logits, losses);
  result.diagnostics.candidates_evaluated = nc;
  result.diagnostics.edge_hit =
      AtEdge(*first, best / n2) || AtEdge(*second, best % n2);
  result.diagnostics.clamped_rows = scoring.clamped_rows;
  return result;
}

TuneResult ApplyFallback(TuneResult result, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("fallback epsilon must be finite and >= 0");
  }
  if (result.msp_tuning_aurc - result.tuning_aurc <= epsilon) {
    result.method = EstimatorSpec::MspFallback();
    result.tuning_aurc = result.msp_tuning_aurc;
    result.fallback_applied = true;
    result.diagnostics.clamped_rows = 0;
  }
  return result;
}

std::string MethodSelection::Name() const {
  if (const auto* kind = std::get_if<TunableKind>(&estimator)) {
    return std::string(TunableKindName(*kind));
  }
  std::string name(BaseEstimatorName(std::get<BaseEstimator>(estimator)));
  switch (transform) {
    case TransformKind::kRaw:
      return name + "/raw";
    case TransformKind::kTemperature:
      return name + (objective == Objective::kNll ? "/ts-nll" : "/ts-aurc");
    case TransformKind::kPNorm:
      return name + "/pnorm";
  }
  return name;
}

MethodSelection MethodSelection::Parse(std::string_view name) {
  MethodSelection out;
  if (const auto kind = ParseTunableKind(name)) {
    out.estimator = *kind;
    return out;
  }
  const auto slash = name.find('/');
  const auto base_name = name.substr(0, slash);
  const auto base = ParseBaseEstimator(base_name);
  if (!base) {
    throw ParameterError("unknown method '" + std::string(name) + "'");
  }
  out.estimator = *base;
  const auto transform = slash == std::string_view::npos
                             ? std::string_view("raw")
                             : name.substr(slash + 1);
  if (transform == "raw") {
    out.transform = TransformKind::kRaw;
  } else if (transform == "ts-nll" || transform == "ts-aurc") {
    CheckSoftmaxBase(*base);
    out.transform = TransformKind::kTemperature;
    out.objective = transform == "ts-nll" ? Objective::kNll : Objective::kAurc;
  } else if (transform == "pnorm") {
    out.transform = TransformKind::kPNorm;
  } else {
    throw ParameterError("unknown transform '" + std::string(transform) + "'");
  }
  return out;
}

TuneResult Tune(const MethodSelection& selection, const LogitMatrix& logits,
                std::span<const int> labels, const GridSpec& grid,
                const TuneOptions& options) {
  grid.Validate();
  if (const auto* kind = std::get_if<TunableKind>(&selection.estimator)) {
    return TuneTunable(*kind, logits, labels, grid, options);
  }
  const auto base = std::get<BaseEstimator>(selection.estimator);
  switch (selection.transform) {
    case TransformKind::kTemperature:
      return TuneTemperature(base, logits, labels, grid.temperatures,
                             selection.objective, options);
    case TransformKind::kPNorm:
      return TunePNorm(base, logits, labels, grid.p_values, grid.temperatures,
                       options);
    case TransformKind::kRaw:
      break;
  }
  ValidateLabels(labels, logits.rows(), logits.cols());
  const Losses losses = ClassifierLosses(logits, labels);
  const auto spec = EstimatorSpec::Make(base);
  TuneResult result;
  result.method = spec;
  result.objective = Objective::kAurc;
  result.tuning_aurc = Aurc(ApplyEstimator(spec, logits), losses);
  result.objective_value = result.tuning_aurc;
  result.msp_tuning_aurc = MspAurc(logits, losses);
  result.diagnostics.candidates_evaluated = 1;
  return result;
}

std::vector<SweepPoint> DataEfficiencySweep(const MethodSelection& selection,
                                            const LogitMatrix& tuning_logits,
                                            std::span<const int> tuning_labels,
                                            const LogitMatrix& test_logits,
                                            std::span<const int> test_labels,
                                            const GridSpec& grid,
                                            const SweepOptions& options) {
  ValidateLabels(tuning_labels, tuning_logits.rows(), tuning_logits.cols());
  ValidateLabels(test_labels, test_logits.rows(), test_logits.cols());
  if (tuning_logits.cols() != test_logits.cols()) {
    throw DimensionError("tuning and test sets have different class counts");
  }
  if (options.repetitions == 0) {
    throw ParameterError("repetitions must be positive");
  }
  for (const auto size : options.sizes) {
    if (size == 0 || size > tuning_logits.rows()) {
      throw ParameterError("sweep size " + std::to_string(size) +
                           " outside [1, " +
                           std::to_string(tuning_logits.rows()) + "]");
    }
  }
  const Losses test_losses = ClassifierLosses(test_logits, test_labels);

  std::vector<SweepPoint> out;
  for (const auto size : options.sizes) {
    SweepPoint point;
    point.size = size;
    for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(size) << 32) ^ rep;
      const auto idx =
          SampleIndices(tuning_logits.rows(), size, options.seed, stream);
      const auto sub_logits = tuning_logits.SelectRows(idx);
      const auto sub_labels = SelectLabels(tuning_labels, idx);
      auto result = Tune(selection, sub_logits, sub_labels, grid, options.tune);
      if (options.fallback_epsilon) {
        result = ApplyFallback(std::move(result), *options.fallback_epsilon);
      }
      point.naurc.push_back(
          Naurc(ApplyMethod(result.method, test_logits), test_losses));
    }
    const auto stats = ComputeMeanStd(point.naurc);
    point.mean = stats.mean;
    point.std = stats.std;
    out.push_back(std::move(point));
  }
  return out;
}

MeanStd ComputeMeanStd(std::span<const double> values) {
  if (values.empty()) throw ParameterError("no values to summarize");
  MeanStd out;
  double sum = 0.0;
  for (const double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (const double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace selclass
