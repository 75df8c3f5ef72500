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

#include "selclass/serialization.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <variant>

#include "json.hpp"
#include "selclass/errors.h"

namespace selclass {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSpecFormat = "selclass-spec";
constexpr const char* kMetricsFormat = "selclass-metrics";
constexpr const char* kRCCurveFormat = "selclass-rc-curve";
constexpr const char* kEvaluationFormat = "selclass-evaluation";
constexpr const char* kRunConfigFormat = "selclass-run-config";
constexpr const char* kBenchmarkFormat = "selclass-benchmark";
constexpr const char* kUndefined = "undefined";

// ---------------------------------------------------------------------------
// Emitter: like Json::dump, but reals use FormatReal and arrays of scalars
// stay on one line.

bool IsScalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void Emit(const Json& j, int indent, std::string* out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      *out += "{}";
      return;
    }
    *out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) *out += ",\n";
      first = false;
      *out += pad;
      *out += Json(key).dump();
      *out += ": ";
      Emit(value, indent + 2, out);
    }
    *out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      *out += "[]";
      return;
    }
    bool flat = true;
    for (const auto& v : j) flat = flat && IsScalar(v);
    if (flat) {
      *out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) *out += ", ";
        Emit(j[i], indent, out);
      }
      *out += "]";
      return;
    }
    *out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) *out += ",\n";
      *out += pad;
      Emit(j[i], indent + 2, out);
    }
    *out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_number_float()) {
    *out += FormatReal(j.get<double>());
  } else {
    *out += j.dump();
  }
}

std::string Dump(const Json& j) {
  std::string out;
  Emit(j, 0, &out);
  out += "\n";
  return out;
}

Json Envelope(const char* format) {
  Json j;
  j["format"] = format;
  j["version"] = kArtifactVersion;
  return j;
}

void CheckEnvelope(const Json& j, const char* format, bool required) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (j.contains("format")) {
    if (j.at("format").get<std::string>() != format) {
      throw ParseError("expected format '" + std::string(format) + "', got '" +
                       j.at("format").get<std::string>() + "'");
    }
  } else if (required) {
    throw ParseError("missing 'format'");
  }
  if (j.contains("version")) {
    const int version = j.at("version").get<int>();
    if (version != kArtifactVersion) {
      throw ParseError("unsupported version " + std::to_string(version));
    }
  } else if (required) {
    throw ParseError("missing 'version'");
  }
}

const Json& At(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError("missing key '" + std::string(key) + "'");
  }
  return j.at(key);
}

double GetReal(const Json& j) {
  if (!j.is_number()) throw ParseError("expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError("expected a finite number");
  return v;
}

double Real(const Json& j, const char* key) { return GetReal(At(j, key)); }

std::size_t Count(const Json& j, const char* key) {
  const auto& v = At(j, key);
  if (!v.is_number_unsigned() &&
      !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError("'" + std::string(key) +
                     "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Json OptionalReal(const std::optional<double>& v) {
  return v ? Json(*v) : Json(kUndefined);
}

std::optional<double> GetOptionalReal(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != kUndefined) {
      throw ParseError("expected a number or \"undefined\"");
    }
    return std::nullopt;
  }
  return GetReal(j);
}

template <typename Fn>
auto Guard(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    // ParameterError / DimensionError from constructors.
    throw ParseError(std::string("invalid value: ") + e.what());
  }
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Type mappings.

Json MethodToJson(const MethodSpec& method) {
  Json j;
  if (const auto* spec = std::get_if<EstimatorSpec>(&method)) {
    j["kind"] = "estimator";
    j["base"] = std::string(BaseEstimatorName(spec->base()));
    Json t;
    if (std::holds_alternative<RawTransform>(spec->transform())) {
      t["kind"] = "raw";
    } else if (const auto* ts =
                   std::get_if<TemperatureTransform>(&spec->transform())) {
      t["kind"] = "ts";
      t["temperature"] = ts->temperature;
    } else {
      const auto& pn = std::get<PNormTransform>(spec->transform());
      t["kind"] = "pnorm";
      t["p"] = pn.p;
      t["tau"] = pn.tau;
    }
    j["transform"] = t;
    j["fallback"] = spec->fallback_applied();
  } else if (const auto* ets = std::get_if<EtsParams>(&method)) {
    j["kind"] = "ets";
    j["w1"] = ets->w1;
    j["w2"] = ets->w2;
    j["temperature"] = ets->temperature;
  } else if (const auto* bk = std::get_if<BkParams>(&method)) {
    j["kind"] = "bk";
    j["a"] = bk->a;
    j["b"] = bk->b;
  } else {
    const auto& hts = std::get<HtsParams>(method);
    j["kind"] = "hts";
    j["b"] = hts.b;
    j["w"] = hts.w;
  }
  return j;
}

MethodSpec MethodFromJson(const Json& j) {
  const auto kind = At(j, "kind").get<std::string>();
  if (kind == "estimator") {
    const auto base_name = At(j, "base").get<std::string>();
    const auto base = ParseBaseEstimator(base_name);
    if (!base) throw ParseError("unknown base '" + base_name + "'");
    const bool fallback =
        j.contains("fallback") && j.at("fallback").get<bool>();
    const auto& t = At(j, "transform");
    const auto tkind = At(t, "kind").get<std::string>();
    Transform transform;
    if (tkind == "raw") {
      transform = RawTransform{};
    } else if (tkind == "ts") {
      transform = TemperatureTransform{Real(t, "temperature")};
    } else if (tkind == "pnorm") {
      transform = PNormTransform{At(t, "p").get<int>(), Real(t, "tau")};
    } else {
      throw ParseError("unknown transform '" + tkind + "'");
    }
    if (fallback) {
      if (*base != BaseEstimator::kMsp ||
          !std::holds_alternative<RawTransform>(transform)) {
        throw ParseError("fallback marker on a method other than MSP/raw");
      }
      return EstimatorSpec::MspFallback();
    }
    return EstimatorSpec::Make(*base, transform);
  }
  if (kind == "ets") {
    EtsParams p{Real(j, "w1"), Real(j, "w2"), Real(j, "temperature")};
    Validate(p);
    return p;
  }
  if (kind == "bk") {
    BkParams p{Real(j, "a"), Real(j, "b")};
    Validate(p);
    return p;
  }
  if (kind == "hts") {
    HtsParams p{Real(j, "b"), Real(j, "w")};
    Validate(p);
    return p;
  }
  throw ParseError("unknown method kind '" + kind + "'");
}

void TuneResultToJson(const TuneResult& r, Json* j) {
  (*j)["method"] = MethodToJson(r.method);
  (*j)["description"] = Describe(r.method);
  (*j)["objective"] = std::string(ObjectiveName(r.objective));
  (*j)["objective_value"] = r.objective_value;
  (*j)["tuning_aurc"] = r.tuning_aurc;
  (*j)["msp_tuning_aurc"] = r.msp_tuning_aurc;
  (*j)["fallback_applied"] = r.fallback_applied;
  Json d;
  d["candidates_evaluated"] = r.diagnostics.candidates_evaluated;
  d["edge_hit"] = r.diagnostics.edge_hit;
  d["degenerate_rows"] = r.diagnostics.degenerate_rows;
  d["clamped_rows"] = r.diagnostics.clamped_rows;
  (*j)["diagnostics"] = d;
}

TuneResult TuneResultFromJson(const Json& j) {
  TuneResult r;
  r.method = MethodFromJson(At(j, "method"));
  const auto objective = ParseObjective(At(j, "objective").get<std::string>());
  if (!objective) throw ParseError("unknown objective");
  r.objective = *objective;
  r.objective_value = Real(j, "objective_value");
  r.tuning_aurc = Real(j, "tuning_aurc");
  r.msp_tuning_aurc = Real(j, "msp_tuning_aurc");
  r.fallback_applied = At(j, "fallback_applied").get<bool>();
  const auto& d = At(j, "diagnostics");
  r.diagnostics.candidates_evaluated = Count(d, "candidates_evaluated");
  r.diagnostics.edge_hit = At(d, "edge_hit").get<bool>();
  r.diagnostics.degenerate_rows = Count(d, "degenerate_rows");
  r.diagnostics.clamped_rows = Count(d, "clamped_rows");
  return r;
}

Json MetricsToJson(const MetricReport& m) {
  Json j;
  j["samples"] = m.samples;
  j["errors"] = m.errors;
  j["accuracy"] = m.accuracy;
  j["risk"] = m.risk;
  j["aurc"] = m.aurc;
  j["oracle_aurc"] = m.oracle_aurc;
  j["e_aurc"] = m.e_aurc;
  j["naurc"] = OptionalReal(m.naurc);
  j["auroc"] = OptionalReal(m.auroc);
  Json sac = Json::array();
  for (const auto& [target, coverage] : m.sac) {
    Json s;
    s["target"] = target;
    s["coverage"] = coverage;
    sac.push_back(s);
  }
  j["sac"] = sac;
  j["tie_groups"] = m.tie_groups;
  return j;
}

MetricReport MetricsFromJson(const Json& j) {
  MetricReport m;
  m.samples = Count(j, "samples");
  m.errors = Count(j, "errors");
  m.accuracy = Real(j, "accuracy");
  m.risk = Real(j, "risk");
  m.aurc = Real(j, "aurc");
  m.oracle_aurc = Real(j, "oracle_aurc");
  m.e_aurc = Real(j, "e_aurc");
  m.naurc = GetOptionalReal(At(j, "naurc"));
  m.auroc = GetOptionalReal(At(j, "auroc"));
  for (const auto& s : At(j, "sac")) {
    m.sac.emplace_back(Real(s, "target"), Real(s, "coverage"));
  }
  m.tie_groups = Count(j, "tie_groups");
  return m;
}

Json MeanStdToJson(const std::optional<MeanStd>& v) {
  if (!v) return Json(kUndefined);
  Json j;
  j["mean"] = v->mean;
  j["std"] = v->std;
  return j;
}

std::optional<MeanStd> MeanStdFromJson(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != kUndefined) throw ParseError("bad summary");
    return std::nullopt;
  }
  return MeanStd{Real(j, "mean"), Real(j, "std")};
}

template <typename T>
Json ListToJson(const std::vector<T>& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x);
  return j;
}

std::vector<double> RealGrid(const Json& j) {
  if (j.is_object()) {
    return StepGrid(Real(j, "min"), Real(j, "max"), Real(j, "step"));
  }
  std::vector<double> out;
  for (const auto& v : j) out.push_back(GetReal(v));
  return out;
}

std::vector<int> IntGrid(const Json& j) {
  std::vector<int> out;
  if (j.is_object()) {
    const int lo = At(j, "min").get<int>();
    const int hi = At(j, "max").get<int>();
    const int step = j.contains("step") ? j.at("step").get<int>() : 1;
    if (step <= 0 || hi < lo) throw ParseError("invalid integer range");
    for (int p = lo; p <= hi; p += step) out.push_back(p);
    return out;
  }
  for (const auto& v : j) out.push_back(v.get<int>());
  return out;
}

Json RunConfigToJson(const RunConfig& c) {
  Json j = Envelope(kRunConfigFormat);
  Json methods = Json::array();
  for (const auto& m : c.methods) methods.push_back(m.Name());
  j["methods"] = methods;
  Json g;
  g["temperatures"] = ListToJson(c.grids.temperatures);
  g["p_values"] = ListToJson(c.grids.p_values);
  g["ets_weights"] = ListToJson(c.grids.ets_weights);
  g["bk_weights"] = ListToJson(c.grids.bk_weights);
  g["hts_b"] = ListToJson(c.grids.hts_b);
  g["hts_w"] = ListToJson(c.grids.hts_w);
  j["grids"] = g;
  j["epsilon"] = c.epsilon;
  j["fallback_epsilon"] = c.fallback_epsilon;
  Json s;
  s["tuning_size"] = c.split.tuning_size;
  s["seed"] = c.split.seed;
  s["repetitions"] = c.split.repetitions;
  j["split"] = s;
  j["sac_targets"] = ListToJson(c.sac_targets);
  return j;
}

RunConfig RunConfigFromJson(const Json& j) {
  CheckEnvelope(j, kRunConfigFormat, /*required=*/false);
  RunConfig c = RunConfig::Default();
  if (j.contains("methods")) {
    c.methods.clear();
    for (const auto& m : j.at("methods")) {
      c.methods.push_back(MethodSelection::Parse(m.get<std::string>()));
    }
  }
  if (j.contains("grids")) {
    const auto& g = j.at("grids");
    if (g.contains("temperatures"))
      c.grids.temperatures = RealGrid(g.at("temperatures"));
    if (g.contains("p_values")) c.grids.p_values = IntGrid(g.at("p_values"));
    if (g.contains("ets_weights"))
      c.grids.ets_weights = RealGrid(g.at("ets_weights"));
    if (g.contains("bk_weights"))
      c.grids.bk_weights = RealGrid(g.at("bk_weights"));
    if (g.contains("hts_b")) c.grids.hts_b = RealGrid(g.at("hts_b"));
    if (g.contains("hts_w")) c.grids.hts_w = RealGrid(g.at("hts_w"));
  }
  if (j.contains("epsilon")) c.epsilon = Real(j, "epsilon");
  if (j.contains("fallback_epsilon"))
    c.fallback_epsilon = Real(j, "fallback_epsilon");
  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (s.contains("tuning_size"))
      c.split.tuning_size = Count(s, "tuning_size");
    if (s.contains("seed")) c.split.seed = At(s, "seed").get<std::uint64_t>();
    if (s.contains("repetitions"))
      c.split.repetitions = Count(s, "repetitions");
  }
  if (j.contains("sac_targets")) {
    c.sac_targets.clear();
    for (const auto& v : j.at("sac_targets"))
      c.sac_targets.push_back(GetReal(v));
  }
  c.Validate();
  return c;
}

}  // namespace

std::string FormatReal(double value) {
  if (!std::isfinite(value)) {
    throw ParameterError("cannot serialize a non-finite real");
  }
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
  std::string out(buf, static_cast<std::size_t>(len));
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string SerializeSpecFile(const TuneResult& result) {
  Json j = Envelope(kSpecFormat);
  TuneResultToJson(result, &j);
  return Dump(j);
}

TuneResult ParseSpecFile(std::string_view text) {
  return Guard([&] {
    const Json j = ParseJson(text);
    CheckEnvelope(j, kSpecFormat, /*required=*/true);
    return TuneResultFromJson(j);
  });
}

std::string SerializeMethod(const MethodSpec& method) {
  return Dump(MethodToJson(method));
}

MethodSpec ParseMethod(std::string_view text) {
  return Guard([&] { return MethodFromJson(ParseJson(text)); });
}

std::string SerializeMetricReport(const MetricReport& report) {
  Json j = Envelope(kMetricsFormat);
  j["metrics"] = MetricsToJson(report);
  return Dump(j);
}

MetricReport ParseMetricReport(std::string_view text) {
  return Guard([&] {
    const Json j = ParseJson(text);
    CheckEnvelope(j, kMetricsFormat, /*required=*/true);
    return MetricsFromJson(At(j, "metrics"));
  });
}

std::string SerializeRCCurve(const RCCurve& curve) {
  Json j = Envelope(kRCCurveFormat);
  Json coverage = Json::array();
  Json risk = Json::array();
  for (const auto& p : curve.points) {
    coverage.push_back(p.coverage);
    risk.push_back(p.risk);
  }
  j["coverage"] = coverage;
  j["risk"] = risk;
  return Dump(j);
}

RCCurve ParseRCCurve(std::string_view text) {
  return Guard([&] {
    const Json j = ParseJson(text);
    CheckEnvelope(j, kRCCurveFormat, /*required=*/true);
    const auto& coverage = At(j, "coverage");
    const auto& risk = At(j, "risk");
    if (!coverage.is_array() || !risk.is_array() ||
        coverage.size() != risk.size()) {
      throw ParseError("coverage and risk must be arrays of equal length");
    }
    RCCurve curve;
    for (std::size_t i = 0; i < coverage.size(); ++i) {
      curve.points.push_back({GetReal(coverage[i]), GetReal(risk[i])});
    }
    return curve;
  });
}

std::string FormatRCCurveText(const RCCurve& curve) {
  std::string out;
  char buf[80];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.coverage, p.risk);
    out += buf;
  }
  return out;
}

RCCurve ParseRCCurveText(std::string_view text) {
  RCCurve curve;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    double coverage = 0.0;
    double risk = 0.0;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two columns");
    }
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), coverage);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), risk);
    if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() ||
        rb.ec != std::errc() || rb.ptr != b.data() + b.size()) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": malformed number");
    }
    curve.points.push_back({coverage, risk});
  }
  return curve;
}

std::string SerializeEvaluationReport(const EvaluationReport& report) {
  Json j = Envelope(kEvaluationFormat);
  if (report.tune) {
    Json t;
    TuneResultToJson(*report.tune, &t);
    j["tune"] = t;
  }
  j["metrics"] = MetricsToJson(report.metrics);
  return Dump(j);
}

EvaluationReport ParseEvaluationReport(std::string_view text) {
  return Guard([&] {
    const Json j = ParseJson(text);
    CheckEnvelope(j, kEvaluationFormat, /*required=*/true);
    EvaluationReport report;
    if (j.contains("tune")) report.tune = TuneResultFromJson(j.at("tune"));
    report.metrics = MetricsFromJson(At(j, "metrics"));
    return report;
  });
}

std::string SerializeRunConfig(const RunConfig& config) {
  return Dump(RunConfigToJson(config));
}

RunConfig ParseRunConfig(std::string_view text) {
  return Guard([&] { return RunConfigFromJson(ParseJson(text)); });
}

std::string SerializeBenchmarkReport(const BenchmarkReport& report) {
  Json j = Envelope(kBenchmarkFormat);
  Json config = RunConfigToJson(report.config);
  config.erase("format");
  config.erase("version");
  j["config"] = config;
  Json models = Json::array();
  for (const auto& model : report.models) {
    Json m;
    m["name"] = model.name;
    m["samples"] = model.samples;
    Json methods = Json::array();
    for (const auto& method : model.methods) {
      Json mo;
      mo["method"] = method.method;
      mo["naurc"] = MeanStdToJson(method.naurc);
      Json splits = Json::array();
      for (const auto& split : method.splits) {
        Json s;
        s["tuned"] = MethodToJson(split.method);
        s["description"] = Describe(split.method);
        s["fallback_applied"] = split.fallback_applied;
        s["tuning_aurc"] = split.tuning_aurc;
        s["test"] = MetricsToJson(split.test);
        splits.push_back(s);
      }
      mo["splits"] = splits;
      methods.push_back(mo);
    }
    m["methods"] = methods;
    models.push_back(m);
  }
  j["models"] = models;
  Json apg = Json::array();
  for (const auto& a : report.apg) {
    Json x;
    x["method"] = a.method;
    x["per_split"] = ListToJson(a.per_split);
    x["summary"] = MeanStdToJson(a.summary);
    apg.push_back(x);
  }
  j["apg"] = apg;
  j["warnings"] = ListToJson(report.warnings);
  return Dump(j);
}

BenchmarkReport ParseBenchmarkReport(std::string_view text) {
  return Guard([&] {
    const Json j = ParseJson(text);
    CheckEnvelope(j, kBenchmarkFormat, /*required=*/true);
    BenchmarkReport report;
    report.config = RunConfigFromJson(At(j, "config"));
    for (const auto& m : At(j, "models")) {
      ModelOutcome model;
      model.name = At(m, "name").get<std::string>();
      model.samples = Count(m, "samples");
      for (const auto& mo : At(m, "methods")) {
        MethodOutcome method;
        method.method = At(mo, "method").get<std::string>();
        method.naurc = MeanStdFromJson(At(mo, "naurc"));
        for (const auto& s : At(mo, "splits")) {
          SplitOutcome split;
          split.method = MethodFromJson(At(s, "tuned"));
          split.fallback_applied = At(s, "fallback_applied").get<bool>();
          split.tuning_aurc = Real(s, "tuning_aurc");
          split.test = MetricsFromJson(At(s, "test"));
          method.splits.push_back(std::move(split));
        }
        model.methods.push_back(std::move(method));
      }
      report.models.push_back(std::move(model));
    }
    for (const auto& x : At(j, "apg")) {
      ApgOutcome a;
      a.method = At(x, "method").get<std::string>();
      for (const auto& v : At(x, "per_split"))
        a.per_split.push_back(GetReal(v));
      a.summary = MeanStdFromJson(At(x, "summary"));
      report.apg.push_back(std::move(a));
    }
    for (const auto& w : At(j, "warnings")) {
      report.warnings.push_back(w.get<std::string>());
    }
    return report;
  });
}

std::string FormatSweepTable(const SweepReport& report) {
  std::string out = "# method " + report.method + "\n";
  out += "# size mean std naurc_per_repetition\n";
  char buf[40];
  for (const auto& p : report.points) {
    out += std::to_string(p.size);
    for (const double v : {p.mean, p.std}) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out += buf;
    }
    for (const double v : p.naurc) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

SweepReport ParseSweepTable(std::string_view text) {
  SweepReport report;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  constexpr std::string_view kMethodPrefix = "# method ";
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind(kMethodPrefix, 0) == 0) {
      report.method = line.substr(kMethodPrefix.size());
      continue;
    }
    if (line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    SweepPoint point;
    bool first = true;
    while (fields >> token) {
      if (first) {
        const auto r = std::from_chars(token.data(),
                                       token.data() + token.size(), point.size);
        if (r.ec != std::errc() || r.ptr != token.data() + token.size()) {
          throw ParseError("line " + std::to_string(line_no) + ": bad size");
        }
        first = false;
        continue;
      }
      double v = 0.0;
      const auto r =
          std::from_chars(token.data(), token.data() + token.size(), v);
      if (r.ec != std::errc() || r.ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed number");
      }
      values.push_back(v);
    }
    if (values.size() < 3) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected size, mean, std and per-repetition values");
    }
    point.mean = values[0];
    point.std = values[1];
    point.naurc.assign(values.begin() + 2, values.end());
    report.points.push_back(std::move(point));
  }
  return report;
}

}  // namespace selclass
