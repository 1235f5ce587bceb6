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

// Calibration files: line-oriented `key = value` text with `#` comments.
//
//   <METRIC-ID>.mig_expected = <number | pass | fail>
//   <METRIC-ID>.<backend>.target = <number | pass | fail>
//   weights.<category> = <number>
//   sim.<mode>.<param> = <number | true | false>
//
// Any other key is an error, as is a key repeated within one file. Later
// sources override earlier ones key by key (see Calibration::overlay).

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "virtbench/error.hpp"
#include "virtbench/sim/backend_model.hpp"
#include "virtbench/taxonomy.hpp"

#if __has_include("virtbench/embedded_calibration.inc")
#include "virtbench/embedded_calibration.inc"
#else
#error "virtbench/embedded_calibration.inc is generated by CMake from data/calibration"
#endif

namespace virtbench {

struct TargetKey {
  MetricId id;
  sim::SystemMode mode;
  friend auto operator<=>(const TargetKey& a, const TargetKey& b) {
    if (auto c = a.id <=> b.id; c != 0) return c;
    return a.mode <=> b.mode;
  }
  friend bool operator==(const TargetKey&, const TargetKey&) = default;
};

struct ParamKey {
  sim::SystemMode mode;
  std::string param;
  friend auto operator<=>(const ParamKey&, const ParamKey&) = default;
};

struct Calibration {
  std::map<MetricId, double> mig_expected;
  std::map<TargetKey, double> targets;
  std::map<Category, double> weights;
  std::map<ParamKey, std::string> sim_params;  // raw text, typed on use

  // Keys present in `other` replace ours.
  void overlay(const Calibration& other) {
    for (const auto& [k, v] : other.mig_expected) mig_expected[k] = v;
    for (const auto& [k, v] : other.targets) targets[k] = v;
    for (const auto& [k, v] : other.weights) weights[k] = v;
    for (const auto& [k, v] : other.sim_params) sim_params[k] = v;
  }

  std::optional<double> target(MetricId id, sim::SystemMode mode) const {
    auto it = targets.find({id, mode});
    if (it == targets.end()) return std::nullopt;
    return it->second;
  }

  // Builds the backend profile for `mode` from its sim.<mode>.* keys.
  sim::BackendModel profile(sim::SystemMode mode) const;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_dots(std::string_view key) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto dot = key.find('.', start);
    parts.push_back(key.substr(start, dot == std::string_view::npos ? key.npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

inline std::optional<double> parse_number(std::string_view text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    return std::nullopt;
  return value;
}

// Metric values accept pass/fail for boolean metrics.
inline std::optional<double> parse_metric_value(std::string_view text) {
  if (text == "pass") return 1.0;
  if (text == "fail") return 0.0;
  return parse_number(text);
}

}  // namespace detail

inline Calibration parse_calibration(std::string_view text, const std::string& source = "<text>") {
  Calibration cal;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == text.npos ? text.npos : eol - pos);
    pos = eol == text.npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != line.npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };
    auto eq = line.find('=');
    if (eq == line.npos) throw CatalogError(where() + "expected 'key = value'");
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    if (auto [it, fresh] = seen.emplace(std::string(key), line_no); !fresh)
      throw CatalogError(where() + "duplicate key '" + std::string(key) + "' (first on line " +
                         std::to_string(it->second) + ")");

    auto parts = detail::split_dots(key);
    auto bad_value = [&] {
      return CatalogError(where() + "bad value '" + std::string(value) + "' for " + std::string(key));
    };

    if (parts.size() == 2 && parts[0] == "weights") {
      auto category = category_from_key(parts[1]);
      if (!category) throw CatalogError(where() + "unknown category '" + std::string(parts[1]) + "'");
      auto v = detail::parse_number(value);
      if (!v) throw bad_value();
      cal.weights[*category] = *v;
    } else if (parts.size() == 3 && parts[0] == "sim") {
      auto mode = sim::mode_from_string(parts[1]);
      if (!mode) throw CatalogError(where() + "unknown mode '" + std::string(parts[1]) + "'");
      if (!sim::find_param(parts[2]))
        throw CatalogError(where() + "unknown sim parameter '" + std::string(parts[2]) + "'");
      cal.sim_params[{*mode, std::string(parts[2])}] = std::string(value);
    } else if ((parts.size() == 2 && parts[1] == "mig_expected") ||
               (parts.size() == 3 && parts[2] == "target")) {
      auto id = MetricId::parse(parts[0]);
      if (!id) throw CatalogError(where() + "unknown metric id '" + std::string(parts[0]) + "'");
      auto v = detail::parse_metric_value(value);
      if (!v) throw bad_value();
      if (parts.size() == 2) {
        cal.mig_expected[*id] = *v;
      } else {
        auto mode = sim::mode_from_string(parts[1]);
        if (!mode) throw CatalogError(where() + "unknown backend '" + std::string(parts[1]) + "'");
        cal.targets[{*id, *mode}] = *v;
      }
    } else {
      throw CatalogError(where() + "unknown key '" + std::string(key) + "'");
    }
  }
  return cal;
}

inline Calibration load_calibration_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatalogError("cannot read calibration file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_calibration(buf.str(), path.string());
}

// Shipped defaults: MIG baselines, weights, table targets and the four
// backend profiles, embedded from data/calibration at build time.
inline const Calibration& default_calibration() {
  static const Calibration cal = [] {
    Calibration merged;
    for (const auto& [name, text] : embedded::kCalibrationFiles)
      merged.overlay(parse_calibration(text, std::string(name)));
    return merged;
  }();
  return cal;
}

// Defaults overlaid with an optional user file.
inline Calibration resolve_calibration(const std::optional<std::filesystem::path>& path) {
  Calibration cal = default_calibration();
  if (path) cal.overlay(load_calibration_file(*path));
  return cal;
}

inline sim::BackendModel Calibration::profile(sim::SystemMode mode) const {
  sim::BackendModel model;
  model.mode = mode;
  for (const auto& [key, text] : sim_params) {
    if (key.mode != mode) continue;
    const auto* field = sim::find_param(key.param);
    auto fail = [&] {
      return CatalogError("bad value '" + text + "' for sim." + std::string(sim::to_string(mode)) +
                          "." + key.param);
    };
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(model.*member)>;
          if constexpr (std::is_same_v<T, bool>) {
            if (text == "true" || text == "1") model.*member = true;
            else if (text == "false" || text == "0") model.*member = false;
            else throw fail();
          } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size()) throw fail();
            model.*member = v;
          } else {
            auto v = detail::parse_number(text);
            if (!v) throw fail();
            model.*member = *v;
          }
        },
        field->member);
  }
  return model;
}

}  // namespace virtbench
