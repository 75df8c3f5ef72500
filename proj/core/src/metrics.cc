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

#include "selclass/metrics.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "internal/rank_sort.h"
#include "selclass/errors.h"

namespace selclass {
namespace internal {
namespace {

constexpr std::size_t kRadixThreshold = 64;

// Maps a finite double to a key whose ascending order is the double's
// descending order. -0.0 and +0.0 share a key.
std::uint64_t DescendingKey(double x) {
  constexpr std::uint64_t kSign = std::uint64_t{1} << 63;
  const std::uint64_t u = std::bit_cast<std::uint64_t>(x + 0.0);
  const std::uint64_t ascending = (u & kSign) ? ~u : (u | kSign);
  return ~ascending;
}

}  // namespace

std::span<const std::uint32_t> RankSorter::Sort(
    std::span<const double> scores) {
  const std::size_t n = scores.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::uint32_t{0});
  if (n < kRadixThreshold) {
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       return scores[a] > scores[b];
                     });
    return order_;
  }

  keys_.resize(n);
  keys_tmp_.resize(n);
  order_tmp_.resize(n);
  std::array<std::array<std::uint32_t, 256>, 8> counts{};
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t key = DescendingKey(scores[i]);
    keys_[i] = key;
    for (int byte = 0; byte < 8; ++byte) {
      ++counts[byte][(key >> (8 * byte)) & 0xff];
    }
  }

  // Stable LSD passes; a byte shared by every key needs no pass.
  for (int byte = 0; byte < 8; ++byte) {
    auto& hist = counts[byte];
    const int shift = 8 * byte;
    if (hist[(keys_[0] >> shift) & 0xff] == n) continue;
    std::uint32_t offset = 0;
    for (auto& c : hist) {
      const std::uint32_t count = c;
      c = offset;
      offset += count;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t dst = hist[(keys_[i] >> shift) & 0xff]++;
      keys_tmp_[dst] = keys_[i];
      order_tmp_[dst] = order_[i];
    }
    keys_.swap(keys_tmp_);
    order_.swap(order_tmp_);
  }
  return order_;
}

double AurcFromOrder(std::span<const std::uint32_t> order,
                     std::span<const std::uint8_t> losses) {
  std::size_t errors = 0;
  double sum = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    errors += losses[order[k]];
    sum += static_cast<double>(errors) / static_cast<double>(k + 1);
  }
  return sum / static_cast<double>(order.size());
}

}  // namespace internal

namespace {

void CheckInputs(std::span<const double> confidences,
                 std::span<const std::uint8_t> losses) {
  if (confidences.size() != losses.size()) {
    throw DimensionError("got " + std::to_string(confidences.size()) +
                         " confidences for " + std::to_string(losses.size()) +
                         " losses");
  }
  if (losses.empty()) throw DimensionError("metrics need at least one sample");
}

std::size_t CountErrors(std::span<const std::uint8_t> losses) {
  std::size_t errors = 0;
  for (auto l : losses) errors += l != 0 ? 1 : 0;
  return errors;
}

double SacFromOrder(std::span<const std::uint32_t> order,
                    std::span<const std::uint8_t> losses, double target) {
  std::size_t errors = 0;
  std::size_t best = 0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    errors += losses[order[k - 1]];
    const double accuracy =
        static_cast<double>(k - errors) / static_cast<double>(k);
    if (accuracy >= target) best = k;
  }
  return static_cast<double>(best) / static_cast<double>(order.size());
}

std::optional<double> AurocFromOrder(std::span<const std::uint32_t> order,
                                     std::span<const double> confidences,
                                     std::span<const std::uint8_t> losses,
                                     std::size_t* tie_groups) {
  // Twice the Mann-Whitney U, kept integral.
  std::uint64_t twice_u = 0;
  std::uint64_t correct_above = 0;
  std::uint64_t correct_total = 0;
  std::uint64_t incorrect_total = 0;
  std::size_t groups = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::uint64_t correct = 0;
    std::uint64_t incorrect = 0;
    while (j < order.size() && confidences[order[j]] == confidences[order[i]]) {
      (losses[order[j]] != 0 ? incorrect : correct) += 1;
      ++j;
    }
    if (j - i > 1) ++groups;
    twice_u += incorrect * (2 * correct_above + correct);
    correct_above += correct;
    correct_total += correct;
    incorrect_total += incorrect;
    i = j;
  }
  if (tie_groups != nullptr) *tie_groups = groups;
  if (correct_total == 0 || incorrect_total == 0) return std::nullopt;
  return static_cast<double>(twice_u) /
         (2.0 * static_cast<double>(correct_total) *
          static_cast<double>(incorrect_total));
}

}  // namespace

std::vector<std::size_t> RankOrder(std::span<const double> confidences) {
  internal::RankSorter sorter;
  const auto order = sorter.Sort(confidences);
  return {order.begin(), order.end()};
}

RCCurve ComputeRCCurve(std::span<const double> confidences,
                       std::span<const std::uint8_t> losses) {
  CheckInputs(confidences, losses);
  internal::RankSorter sorter;
  const auto order = sorter.Sort(confidences);
  const double n = static_cast<double>(order.size());
  RCCurve curve;
  curve.points.reserve(order.size());
  std::size_t errors = 0;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    errors += losses[order[k - 1]];
    curve.points.push_back(
        {static_cast<double>(k) / n,
         static_cast<double>(errors) / static_cast<double>(k)});
  }
  return curve;
}

double Aurc(std::span<const double> confidences,
            std::span<const std::uint8_t> losses) {
  CheckInputs(confidences, losses);
  internal::RankSorter sorter;
  return internal::AurcFromOrder(sorter.Sort(confidences), losses);
}

double OracleAurc(std::span<const std::uint8_t> losses) {
  if (losses.empty()) throw DimensionError("metrics need at least one sample");
  const std::size_t n = losses.size();
  const std::size_t e = CountErrors(losses);
  double sum = 0.0;
  for (std::size_t k = n - e + 1; k <= n; ++k) {
    sum += static_cast<double>(k - (n - e)) / static_cast<double>(k);
  }
  return sum / static_cast<double>(n);
}

double ExcessAurc(std::span<const double> confidences,
                  std::span<const std::uint8_t> losses) {
  return Aurc(confidences, losses) - OracleAurc(losses);
}

double NormalizeAurc(double aurc, std::span<const std::uint8_t> losses) {
  if (losses.empty()) throw DimensionError("metrics need at least one sample");
  const std::size_t e = CountErrors(losses);
  if (e == 0 || e == losses.size()) {
    throw UndefinedMetricError(
        e == 0 ? "NAURC is undefined for a classifier without errors"
               : "NAURC is undefined for a classifier without correct "
                 "predictions");
  }
  const double risk =
      static_cast<double>(e) / static_cast<double>(losses.size());
  const double oracle = OracleAurc(losses);
  return (aurc - oracle) / (risk - oracle);
}

double Naurc(std::span<const double> confidences,
             std::span<const std::uint8_t> losses) {
  return NormalizeAurc(Aurc(confidences, losses), losses);
}

double Auroc(std::span<const double> confidences,
             std::span<const std::uint8_t> losses) {
  CheckInputs(confidences, losses);
  internal::RankSorter sorter;
  const auto auroc =
      AurocFromOrder(sorter.Sort(confidences), confidences, losses, nullptr);
  if (!auroc) {
    throw UndefinedMetricError(
        "AUROC needs both correct and incorrect predictions");
  }
  return *auroc;
}

double SelectiveAccuracyCoverage(std::span<const double> confidences,
                                 std::span<const std::uint8_t> losses,
                                 double target_accuracy) {
  CheckInputs(confidences, losses);
  if (!(target_accuracy > 0.0 && target_accuracy <= 1.0)) {
    throw ParameterError("SAC target accuracy must be in (0, 1]");
  }
  internal::RankSorter sorter;
  return SacFromOrder(sorter.Sort(confidences), losses, target_accuracy);
}

double AveragePositiveGain(std::span<const double> naurc_msp,
                           std::span<const double> naurc_method,
                           double epsilon) {
  if (naurc_msp.empty()) throw ParameterError("APG needs at least one model");
  if (naurc_msp.size() != naurc_method.size()) {
    throw DimensionError("APG inputs differ in model count");
  }
  if (!(epsilon >= 0.0)) throw ParameterError("APG epsilon must be >= 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < naurc_msp.size(); ++i) {
    const double gain = naurc_msp[i] - naurc_method[i];
    if (gain > epsilon) sum += gain;
  }
  return sum / static_cast<double>(naurc_msp.size());
}

std::size_t CountTieGroups(std::span<const double> confidences) {
  std::vector<double> sorted(confidences.begin(), confidences.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t groups = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > 1) ++groups;
    i = j;
  }
  return groups;
}

MetricReport Evaluate(std::span<const double> confidences,
                      std::span<const std::uint8_t> losses,
                      std::span<const double> sac_targets) {
  CheckInputs(confidences, losses);
  for (double t : sac_targets) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw ParameterError("SAC target accuracy must be in (0, 1]");
    }
  }
  internal::RankSorter sorter;
  const auto order = sorter.Sort(confidences);

  MetricReport report;
  report.samples = losses.size();
  report.errors = CountErrors(losses);
  report.risk =
      static_cast<double>(report.errors) / static_cast<double>(report.samples);
  report.accuracy = 1.0 - report.risk;
  report.aurc = internal::AurcFromOrder(order, losses);
  report.oracle_aurc = OracleAurc(losses);
  report.e_aurc = report.aurc - report.oracle_aurc;
  if (report.errors > 0 && report.errors < report.samples) {
    report.naurc =
        (report.aurc - report.oracle_aurc) / (report.risk - report.oracle_aurc);
  }
  report.auroc = AurocFromOrder(order, confidences, losses, &report.tie_groups);
  for (double t : sac_targets) {
    report.sac.emplace_back(t, SacFromOrder(order, losses, t));
  }
  return report;
}

}  // namespace selclass
