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

// JSON descriptions of bodies and parameter sets, deterministic CSV, SVG
// projections and atomic file output.

#ifndef GEOTRIG_IO_HPP_
#define GEOTRIG_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geotrig/convex_bodies.hpp"
#include "geotrig/geodesics_heisenberg.hpp"
#include "geotrig/geodesics_lorentz.hpp"
#include "geotrig/trig_hyperbolic.hpp"
#include "json.hpp"

namespace geotrig {

using Json = nlohmann::json;

// {"kind": "compact" | "cone", "descriptor": {...}, "r_max": 1e6}. Cone
// descriptors may carry "rotation" (alpha_hyperbola) and "allow_degenerate";
// "polyline" takes "vertices", "ray0", "ray1". lp_ball accepts "p": "inf".
struct BodySpec {
  std::optional<ConvexBody> compact;
  std::optional<ConeBody> cone;
  HyperOptions hyper;
};

BodySpec parse_body(const Json& j);
Json body_to_json(const ConvexBody& body);
Json body_to_json(const ConeBody& body);

Json read_json(const std::string& path);
BodySpec read_body(const std::string& path);

// Heisenberg configuration: {"omega": <compact body>, "profile": {"type":
// "sqrt_cap" | "affine_cap" | "lp_cap" | "const" | "samples", ...},
// "params": {"family", "A", "h3", "eta0", "branch", "u3", "theta"} or
// "singular": {"eta0", "beta": {"type": "constant" | "ramp", ...}, "u3", "A"},
// optional "t_max", "dt"}.
struct HeisenbergConfig {
  std::optional<SphericalControlSet> set;
  HeisenbergParams params;
  bool singular = false;
  double singular_eta0 = 0;
  BetaSchedule beta;
  std::optional<double> singular_u3;
  double singular_A = 1;
  std::optional<double> t_max;
  std::optional<double> dt;
};

HeisenbergConfig parse_heisenberg_config(const Json& j);
Profile parse_profile(const Json& j);

// Lobachevsky: {"case": "generic" | "horizontal" | "lightlike", "eta0", "c1",
// "c2", "c3", "a0", "u1", "ray_index"}.
LobachevskyParams parse_lobachevsky_params(const Json& j);

// Unimodular: {"kind": "timelike" | "lightlike", "E", "eta0", "sign",
// "ray_index", "switch_times", "h3_0"}.
struct UnimodularParams {
  bool lightlike = false;
  double E = 1;
  double eta0 = 0;
  int sign = 1;
  int ray_index = 0;
  std::vector<double> switch_times;
  double h3_0 = 1;
};

UnimodularParams parse_unimodular_params(const Json& j);

// Shortest representation that reads back to the same double.
std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(const std::vector<double>& row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::string str() const;
  // Column-major JSON object {"columns": [...], "rows": [[...], ...]}.
  Json to_json() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

// Polyline trajectory over a closed or open boundary curve, y axis up.
std::string svg_plot(const std::vector<Vec2>& trajectory, const std::vector<Vec2>& boundary,
                     bool boundary_closed);

// Writes to a sibling temporary file and renames it over `path`. "-" writes
// to standard output.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace geotrig

#endif  // GEOTRIG_IO_HPP_
