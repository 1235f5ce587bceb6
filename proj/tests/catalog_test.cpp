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

#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "support.hpp"

namespace virtbench {
namespace {

struct Row {
  std::string id, name, unit, better;
};

std::vector<Row> reference_rows() {
  std::ifstream in(testing::source_dir() / "tests/data/taxonomy.tsv");
  std::vector<Row> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    Row r;
    std::getline(ss, r.id, '\t');
    std::getline(ss, r.name, '\t');
    std::getline(ss, r.unit, '\t');
    std::getline(ss, r.better, '\t');
    rows.push_back(r);
  }
  return rows;
}

Direction direction_of(const std::string& better) {
  if (better == "Lower") return Direction::kLowerBetter;
  if (better == "Higher") return Direction::kHigherBetter;
  return Direction::kBooleanTrue;
}

TEST(Catalog, MatchesReferenceTable) {
  auto rows = reference_rows();
  ASSERT_EQ(rows.size(), 56u);
  const auto& cat = testing::shipped_catalog();
  ASSERT_EQ(cat.size(), 56u);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& def = cat.metrics()[i];
    EXPECT_EQ(def.id.str(), rows[i].id);
    EXPECT_EQ(def.name, rows[i].name) << rows[i].id;
    EXPECT_EQ(to_string(def.unit), rows[i].unit) << rows[i].id;
    EXPECT_EQ(def.direction, direction_of(rows[i].better)) << rows[i].id;
    EXPECT_TRUE(std::isfinite(def.mig_expected));
    ids.insert(def.id.str());
  }
  EXPECT_EQ(ids.size(), 56u);
}

TEST(Catalog, Lookup) {
  const auto& cat = testing::shipped_catalog();
  EXPECT_EQ(cat.lookup("OH-001").name, "Kernel Launch Latency");
  EXPECT_EQ(cat.lookup("OH-001").direction, Direction::kLowerBetter);
  EXPECT_EQ(cat.lookup("OH-001").unit, Unit::kMicroseconds);
  EXPECT_EQ(cat.lookup("OH-001").mig_expected, 5.0);
  EXPECT_EQ(cat.lookup("IS-008").unit, Unit::kRatio01);
  EXPECT_EQ(cat.lookup("IS-008").direction, Direction::kHigherBetter);
  EXPECT_EQ(cat.lookup("ERR-003").name, "Graceful Degradation Score");
  EXPECT_EQ(cat.lookup("ERR-003").direction, Direction::kHigherBetter);
  EXPECT_EQ(cat.lookup("IS-005").mig_expected, 1.0);
  EXPECT_THROW(cat.lookup("XX-999"), NotFoundError);
  EXPECT_THROW(cat.lookup("OH-011"), NotFoundError);
}

TEST(MetricIdText, ParseAndShape) {
  EXPECT_EQ(MetricId::parse("CACHE-004")->str(), "CACHE-004");
  EXPECT_FALSE(MetricId::parse("OH-1"));
  EXPECT_FALSE(MetricId::parse("oh-001"));
  EXPECT_FALSE(MetricId::parse("OH-011"));
  EXPECT_TRUE(MetricId::well_formed("OH-011"));
  EXPECT_FALSE(MetricId::well_formed("OH-01x"));
  EXPECT_EQ(MetricId::require("ERR-003").flat_index(), 55u);
}

TEST(Catalog, WeightsDefaultAndValidated) {
  const auto& w = testing::shipped_catalog().weights();
  EXPECT_EQ(w[Category::kOverhead], 0.15);
  EXPECT_EQ(w[Category::kErrorRecovery], 0.04);
  auto cal = default_calibration();
  cal.weights[Category::kOverhead] = 0.5;
  EXPECT_THROW(Catalog{cal}, WeightError);
}

TEST(Calibration, OverrideFileReplacesOneBaseline) {
  auto path = std::filesystem::temp_directory_path() / "virtbench_override.calib";
  std::ofstream(path) << "# tighter launch baseline\nOH-001.mig_expected = 4.5\n";
  auto cat = load_catalog(path);
  EXPECT_EQ(cat.lookup("OH-001").mig_expected, 4.5);
  EXPECT_EQ(cat.lookup("OH-002").mig_expected, testing::shipped_catalog().lookup("OH-002").mig_expected);
  std::filesystem::remove(path);
}

TEST(Calibration, ParsesEveryKeyFamily) {
  auto cal = parse_calibration(
      "OH-001.mig_expected = 5.0   # trailing comment\n"
      "IS-005.hami.target = pass\n"
      "LLM-004.fcsp.target = 28.7\n"
      "weights.overhead = 0.15\n"
      "sim.hami.hook_ns = 85\n"
      "\n  # blank and comment lines are fine\n");
  EXPECT_EQ(cal.mig_expected.at(MetricId::require("OH-001")), 5.0);
  EXPECT_EQ(cal.target(MetricId::require("IS-005"), sim::SystemMode::kHami), 1.0);
  EXPECT_EQ(cal.target(MetricId::require("LLM-004"), sim::SystemMode::kFcsp), 28.7);
  EXPECT_FALSE(cal.target(MetricId::require("LLM-004"), sim::SystemMode::kHami));
  EXPECT_EQ(cal.weights.at(Category::kOverhead), 0.15);
}

void expect_catalog_error(const std::string& text, const std::string& needle) {
  try {
    parse_calibration(text, "t.calib");
    ADD_FAILURE() << "accepted: " << text;
  } catch (const CatalogError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

TEST(Calibration, Errors) {
  expect_catalog_error("XX-999.mig_expected = 1\n", "XX-999");
  expect_catalog_error("OH-011.mig_expected = 1\n", "OH-011");
  expect_catalog_error("OH-001.mig_expected = 1\nOH-001.mig_expected = 2\n", "duplicate");
  expect_catalog_error("OH-001.mig_expected = 1\nOH-001.mig_expected = 2\n", "t.calib:2");
  expect_catalog_error("OH-001.mig_expected = fast\n", "bad value");
  expect_catalog_error("OH-001.vmware.target = 1\n", "vmware");
  expect_catalog_error("weights.vibes = 0.1\n", "vibes");
  expect_catalog_error("sim.hami.warp_drive = 1\n", "warp_drive");
  expect_catalog_error("just some words\n", "key = value");
  expect_catalog_error("OH-001.baseline = 3\n", "unknown key");
  EXPECT_THROW(load_calibration_file("/nonexistent/x.calib"), CatalogError);
}

TEST(Calibration, InvalidBaselinesRejectedByCatalog) {
  auto cal = default_calibration();
  cal.mig_expected[MetricId::require("OH-001")] = 0;
  EXPECT_THROW(Catalog{cal}, CatalogError);
  cal = default_calibration();
  cal.mig_expected[MetricId::require("IS-005")] = 0.5;
  EXPECT_THROW(Catalog{cal}, CatalogError);
}

TEST(Calibration, ProfilesHaveNoInterceptionOutsideSoftwareLayers) {
  for (auto mode : {sim::SystemMode::kNative, sim::SystemMode::kMig}) {
    auto m = default_calibration().profile(mode);
    EXPECT_EQ(m.hook_ns, 0);
    EXPECT_EQ(m.lock_mean_us, 0);
  }
  EXPECT_EQ(default_calibration().profile(sim::SystemMode::kHami).hook_ns, 85);
  EXPECT_EQ(default_calibration().profile(sim::SystemMode::kFcsp).hook_ns, 42);
}

}  // namespace
}  // namespace virtbench
