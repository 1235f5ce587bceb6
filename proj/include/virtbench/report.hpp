// Copyright 2026 The virtbench Authors
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

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "virtbench/catalog.hpp"
#include "virtbench/error.hpp"
#include "virtbench/runner.hpp"

namespace virtbench {

using ojson = nlohmann::ordered_json;

namespace detail {

inline ojson opt_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

inline std::optional<double> opt_from(const ojson& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

// The exact text the JSON emitter uses for a number.
inline std::string number_text(double v) { return ojson(v).dump(); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string percent_text(double fraction) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << fraction * 100.0 << '%';
  return os.str();
}

}  // namespace detail

inline ojson to_json(const BenchmarkReport& r) {
  const auto& defs = kTaxonomy;
  ojson j;
  j["benchmark_version"] = r.benchmark_version;
  j["schema_version"] = r.schema_version;
  j["system"] = {{"name", std::string(sim::to_string(r.system))}};

  ojson cfg;
  cfg["iterations"] = r.iterations;
  cfg["warmup"] = r.warmup;
  cfg["tenants"] = r.tenants;
  cfg["memory_limit_mb"] = detail::opt_number(r.memory_limit_mb);
  cfg["compute_limit_percent"] = detail::opt_number(r.compute_limit_percent);
  cfg["seed"] = r.seed;
  if (r.metric_filter) {
    ojson ids = ojson::array();
    for (auto id : *r.metric_filter) ids.push_back(id.str());
    cfg["metrics"] = ids;
  } else {
    cfg["metrics"] = nullptr;
  }
  j["config"] = cfg;
  j["generated_at"] = r.generated_at;

  ojson metrics = ojson::array();
  for (const auto& m : r.metrics) {
    const auto& row = defs[m.id.flat_index()];
    ojson e;
    e["id"] = m.id.str();
    e["name"] = std::string(row.name);
    e["category"] = std::string(info(m.id.category()).display_name);
    e["unit"] = std::string(to_string(row.unit));
    e["direction"] = std::string(to_string(row.direction));
    e["kind"] = std::string(to_string(m.kind));
    if (m.statistics) {
      const auto& s = *m.statistics;
      e["statistics"] = {{"mean", s.mean},     {"stddev", s.stddev}, {"median", s.median},
                         {"p95", s.p95},       {"p99", s.p99},       {"cv", detail::opt_number(s.cv)},
                         {"n", s.n}};
    } else {
      e["statistics"] = nullptr;
    }
    e["value"] = m.value;
    e["outcome"] = m.outcome ? ojson(*m.outcome ? "pass" : "fail") : ojson(nullptr);
    ojson aux = ojson::object();
    for (const auto& [k, v] : m.auxiliary) aux[k] = v;
    e["auxiliary"] = aux;
    e["score"] = m.score;
    e["mig_comparison"] = {{"mig_expected", m.mig_expected},
                           {"mig_deviation_percent", m.mig_deviation_percent},
                           {"mig_gap_percent", m.mig_gap_percent}};
    metrics.push_back(e);
  }
  j["metrics"] = metrics;

  ojson cats = ojson::array();
  for (const auto& c : r.categories)
    cats.push_back({{"name", std::string(info(c.category).display_name)}, {"score", c.score}});
  j["categories"] = cats;
  j["overall"] = {{"weighted_score", r.weighted_score},
                  {"unweighted_parity", r.unweighted_parity},
                  {"mig_parity_percent", detail::opt_number(r.mig_parity)},
                  {"grade", std::string(to_string(r.grade))}};
  return j;
}

inline std::string emit_json(const BenchmarkReport& r) { return to_json(r).dump(2) + "\n"; }

inline BenchmarkReport report_from_json(const ojson& j) {
  try {
    BenchmarkReport r;
    r.benchmark_version = j.at("benchmark_version").get<std::string>();
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
      throw CompareError("unsupported report schema version " + std::to_string(r.schema_version));
    auto mode = sim::mode_from_string(j.at("system").at("name").get<std::string>());
    if (!mode) throw CompareError("unknown system in report");
    r.system = *mode;

    const auto& cfg = j.at("config");
    r.iterations = cfg.at("iterations").get<int>();
    r.warmup = cfg.at("warmup").get<int>();
    r.tenants = cfg.at("tenants").get<int>();
    r.memory_limit_mb = detail::opt_from(cfg.at("memory_limit_mb"));
    r.compute_limit_percent = detail::opt_from(cfg.at("compute_limit_percent"));
    r.seed = cfg.at("seed").get<std::uint64_t>();
    if (!cfg.at("metrics").is_null()) {
      r.metric_filter.emplace();
      for (const auto& id : cfg.at("metrics")) r.metric_filter->push_back(MetricId::require(id.get<std::string>()));
    }
    r.generated_at = j.at("generated_at").get<std::string>();

    for (const auto& e : j.at("metrics")) {
      MetricResult m;
      m.id = MetricId::require(e.at("id").get<std::string>());
      auto kind = e.at("kind").get<std::string>();
      m.kind = kind == "samples" ? ResultKind::kSamples
               : kind == "boolean" ? ResultKind::kBoolean
                                   : ResultKind::kScalar;
      if (!e.at("statistics").is_null()) {
        const auto& s = e.at("statistics");
        Statistics st;
        st.mean = s.at("mean").get<double>();
        st.stddev = s.at("stddev").get<double>();
        st.median = s.at("median").get<double>();
        st.p95 = s.at("p95").get<double>();
        st.p99 = s.at("p99").get<double>();
        st.cv = detail::opt_from(s.at("cv"));
        st.n = s.at("n").get<std::size_t>();
        m.statistics = st;
      }
      m.value = e.at("value").get<double>();
      if (!e.at("outcome").is_null()) m.outcome = e.at("outcome").get<std::string>() == "pass";
      for (const auto& [k, v] : e.at("auxiliary").items()) m.auxiliary[k] = v.get<double>();
      m.score = e.at("score").get<double>();
      const auto& mc = e.at("mig_comparison");
      m.mig_expected = mc.at("mig_expected").get<double>();
      m.mig_deviation_percent = mc.at("mig_deviation_percent").get<double>();
      m.mig_gap_percent = mc.at("mig_gap_percent").get<double>();
      r.metrics.push_back(std::move(m));
    }
    for (const auto& c : j.at("categories"))
      r.categories.push_back({category_from_name(c.at("name").get<std::string>()), c.at("score").get<double>()});
    const auto& o = j.at("overall");
    r.weighted_score = o.at("weighted_score").get<double>();
    r.unweighted_parity = o.at("unweighted_parity").get<double>();
    r.mig_parity = detail::opt_from(o.at("mig_parity_percent"));
    r.grade = grade_of(r.weighted_score);
    if (to_string(r.grade) != o.at("grade").get<std::string>())
      throw CompareError("report grade does not match its score");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CompareError(std::string("malformed report: ") + e.what());
  } catch (const NotFoundError& e) {
    throw CompareError(std::string("malformed report: ") + e.what());
  }
}

inline BenchmarkReport report_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CompareError(std::string("report is not valid JSON: ") + e.what());
  }
  return report_from_json(j);
}

inline BenchmarkReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CompareError("cannot read report " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return report_from_json(buf.str());
  } catch (const CompareError& e) {
    throw CompareError(path.string() + ": " + e.what());
  }
}

inline std::string emit_csv(const BenchmarkReport& r) {
  std::string out =
      "metric_id,name,category,unit,mean,stddev,median,p95,p99,cv,score,mig_expected,"
      "mig_deviation_percent,mig_gap_percent\n";
  auto num = detail::number_text;
  for (const auto& m : r.metrics) {
    const auto& row = kTaxonomy[m.id.flat_index()];
    std::vector<std::string> cells = {m.id.str(), detail::csv_field(std::string(row.name)),
                                      detail::csv_field(std::string(info(m.id.category()).display_name)),
                                      std::string(to_string(row.unit))};
    if (m.statistics) {
      const auto& s = *m.statistics;
      cells.insert(cells.end(), {num(s.mean), num(s.stddev), num(s.median), num(s.p95), num(s.p99),
                                 s.cv ? num(*s.cv) : ""});
    } else {
      // single-valued metrics carry their value in the mean column
      cells.insert(cells.end(), {num(m.value), "", "", "", "", ""});
    }
    cells.insert(cells.end(), {num(m.score), num(m.mig_expected), num(m.mig_deviation_percent),
                               num(m.mig_gap_percent)});
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

inline std::string format_value(const MetricResult& m) {
  const auto& row = kTaxonomy[m.id.flat_index()];
  if (m.outcome) return *m.outcome ? "pass" : "fail";
  std::ostringstream os;
  os << std::setprecision(4) << m.value << ' ' << to_string(row.unit);
  return os.str();
}

inline std::string emit_txt(const BenchmarkReport& r) {
  std::ostringstream os;
  os << "GPU virtualization benchmark " << r.benchmark_version << "\n";
  os << "System: " << sim::to_string(r.system) << "\n";
  os << "Iterations: " << r.iterations << "  Warmup: " << r.warmup << "  Tenants: " << r.tenants
     << "  Seed: " << r.seed << "\n";
  if (r.memory_limit_mb) os << "Memory limit: " << *r.memory_limit_mb << " MB\n";
  if (r.compute_limit_percent) os << "Compute limit: " << *r.compute_limit_percent << "%\n";
  os << "Generated: " << r.generated_at << "\n\n";

  os << std::left << std::setw(20) << "Category" << std::right << std::setw(8) << "Score" << "\n";
  for (const auto& c : r.categories)
    os << std::left << std::setw(20) << info(c.category).display_name << std::right << std::setw(8)
       << detail::percent_text(c.score) << "\n";
  os << "\n";

  os << "Overall: " << detail::percent_text(r.weighted_score) << "  Grade: " << to_string(r.grade)
     << "  MIG parity: " << (r.mig_parity ? detail::percent_text(*r.mig_parity / 100.0) : "--") << "\n";
  os << "Unweighted parity: " << detail::percent_text(r.unweighted_parity) << "\n\n";

  std::vector<const MetricResult*> worst;
  for (const auto& m : r.metrics) worst.push_back(&m);
  std::stable_sort(worst.begin(), worst.end(),
                   [](const MetricResult* a, const MetricResult* b) { return a->score < b->score; });
  worst.resize(std::min<std::size_t>(5, worst.size()));
  os << "Lowest scores:\n";
  for (const auto* m : worst) {
    os << "  " << std::left << std::setw(10) << m->id.str() << std::setw(32)
       << kTaxonomy[m->id.flat_index()].name << std::right << std::setw(8)
       << detail::percent_text(m->score) << "  " << format_value(*m);
    if (m->statistics && !m->statistics->cv) os << "  (cv n/a)";
    os << "\n";
  }
  return os.str();
}

// Replaces generated_at so reports from different runs can be diffed.
inline std::string normalize_timestamp(const std::string& text) {
  static const std::regex re(R"re("generated_at": "[^"]*")re");
  auto out = std::regex_replace(text, re, R"("generated_at": "1970-01-01T00:00:00Z")");
  static const std::regex txt_re(R"(Generated: \S+)");
  return std::regex_replace(out, txt_re, "Generated: 1970-01-01T00:00:00Z");
}

struct OutputFiles {
  std::filesystem::path json, csv, txt;
};

inline OutputFiles write_reports(const BenchmarkReport& r, const std::filesystem::path& prefix) {
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
  OutputFiles files{prefix.string() + ".json", prefix.string() + ".csv", prefix.string() + ".txt"};
  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw RunError("cannot write " + p.string());
    out << text;
  };
  write(files.json, emit_json(r));
  write(files.csv, emit_csv(r));
  write(files.txt, emit_txt(r));
  return files;
}

}  // namespace virtbench
