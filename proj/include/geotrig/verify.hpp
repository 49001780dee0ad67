// Copyright 2026 The Geotrig Authors
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

// Oracle-backed verification suites and the ten acceptance properties.

#ifndef GEOTRIG_VERIFY_HPP_
#define GEOTRIG_VERIFY_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geotrig/io.hpp"
#include "geotrig/kernels.hpp"
#include "geotrig/oracles.hpp"

namespace geotrig {

enum class Suite { kDuality, kTrig, kHeisenberg, kLobachevsky, kUnimodular, kAll };

Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite suite);

struct VerifyOptions {
  std::uint64_t seed = 0;
  Exec exec = Exec::kParallel;
};

inline constexpr int kCriteria = 10;

std::string_view criterion_title(int k);
// Reports for acceptance property k in 1..10.
std::vector<OracleReport> run_criterion(int k, const VerifyOptions& options = {});

// duality: 2-5; trig: 1, 6 and the area oracles; heisenberg: 7;
// lobachevsky: 8; unimodular: 9, 10.
std::vector<OracleReport> run_suite(Suite suite, const VerifyOptions& options = {});

bool all_passed(const std::vector<OracleReport>& reports);
std::string report_table(const std::vector<OracleReport>& reports);
Json report_json(const std::vector<OracleReport>& reports);

}  // namespace geotrig

#endif  // GEOTRIG_VERIFY_HPP_
