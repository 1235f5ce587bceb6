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

#include "virtbench/calibration.hpp"
#include "virtbench/catalog.hpp"
#include "virtbench/compare.hpp"
#include "virtbench/config.hpp"
#include "virtbench/error.hpp"
#include "virtbench/report.hpp"
#include "virtbench/result.hpp"
#include "virtbench/runner.hpp"
#include "virtbench/scoring.hpp"
#include "virtbench/sim/backend.hpp"
#include "virtbench/stats.hpp"
#include "virtbench/taxonomy.hpp"
