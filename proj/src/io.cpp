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

#include "geotrig/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "geotrig/error.hpp"

namespace geotrig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 vec_of(const Json& j) {
  if (!j.is_array() || j.size() != 2) raise(Errc::kInvalidInput, "expected [x, y], got " + j.dump());
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

std::vector<Vec2> vecs_of(const Json& j) {
  if (!j.is_array()) raise(Errc::kInvalidInput, "expected a list of points");
  std::vector<Vec2> out;
  for (const Json& p : j) out.push_back(vec_of(p));
  return out;
}

Json json_of(const Vec2& v) { return Json::array({v.x(), v.y()}); }

Json json_of(const std::vector<Vec2>& vs) {
  Json out = Json::array();
  for (const Vec2& v : vs) out.push_back(json_of(v));
  return out;
}

double number_or_inf(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    raise(Errc::kInvalidInput, "expected a number or \"inf\", got " + s);
  }
  return j.get<double>();
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    raise(Errc::kInvalidInput, std::string(what) + ": " + e.what());
  }
}

BetaSchedule parse_beta(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "constant") return constant_beta(j.at("value").get<double>());
  if (type == "ramp") return ramp_beta(j.at("T").get<double>());
  raise(Errc::kInvalidInput, "unknown beta schedule '" + type + "'");
}

template <class T>
std::optional<T> optional_of(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

BodySpec parse_body(const Json& j) {
  return guarded("body", [&] {
    BodySpec out;
    const std::string kind = j.at("kind").get<std::string>();
    const Json& d = j.at("descriptor");
    const std::string type = d.at("type").get<std::string>();
    out.hyper.allow_degenerate = j.value("allow_degenerate", false);
    if (kind == "compact") {
      if (type == "polygon") {
        out.compact = ConvexBody::polygon(vecs_of(d.at("vertices")));
      } else if (type == "ellipse") {
        out.compact = ConvexBody::ellipse(d.at("a").get<double>(), d.at("b").get<double>());
      } else if (type == "lp_ball") {
        out.compact = ConvexBody::lp_ball(number_or_inf(d.at("p")));
      } else if (type == "radial_samples") {
        out.compact = ConvexBody::radial_samples(d.at("phi").get<std::vector<double>>(),
                                                 d.at("r").get<std::vector<double>>());
      } else {
        raise(Errc::kInvalidInput, "unknown compact descriptor '" + type + "'");
      }
    } else if (kind == "cone") {
      const double r_max = j.value("r_max", 1e6);
      ConeDescriptor desc;
      if (type == "alpha_hyperbola") {
        desc = AlphaHyperbolaDescriptor{d.at("alpha").get<double>(), d.value("rotation", 0.0)};
      } else if (type == "ray_segment") {
        desc = RaySegmentDescriptor{vec_of(d.at("p0")), vec_of(d.at("p1"))};
      } else if (type == "radial_samples") {
        desc = ConeRadialSamplesDescriptor{d.at("phi").get<std::vector<double>>(),
                                           d.at("r").get<std::vector<double>>()};
      } else if (type == "polyline") {
        desc = PolylineDescriptor{vecs_of(d.at("vertices")), vec_of(d.at("ray0")), vec_of(d.at("ray1"))};
      } else {
        raise(Errc::kInvalidInput, "unknown cone descriptor '" + type + "'");
      }
      out.cone = ConeBody(desc, r_max);
    } else {
      raise(Errc::kInvalidInput, "kind must be \"compact\" or \"cone\"");
    }
    return out;
  });
}

Json body_to_json(const ConvexBody& body) {
  Json d;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PolygonDescriptor>) {
          d = {{"type", "polygon"}, {"vertices", json_of(v.vertices)}};
        } else if constexpr (std::is_same_v<T, EllipseDescriptor>) {
          d = {{"type", "ellipse"}, {"a", v.a}, {"b", v.b}};
        } else if constexpr (std::is_same_v<T, LpBallDescriptor>) {
          d = {{"type", "lp_ball"}};
          if (std::isinf(v.p)) d["p"] = "inf"; else d["p"] = v.p;
        } else {
          d = {{"type", "radial_samples"}, {"phi", v.phi}, {"r", v.r}};
        }
      },
      body.descriptor());
  return {{"kind", "compact"}, {"descriptor", d}};
}

Json body_to_json(const ConeBody& body) {
  Json d;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AlphaHyperbolaDescriptor>) {
          d = {{"type", "alpha_hyperbola"}, {"alpha", v.alpha}};
          if (v.rotation != 0) d["rotation"] = v.rotation;
        } else if constexpr (std::is_same_v<T, RaySegmentDescriptor>) {
          d = {{"type", "ray_segment"}, {"p0", json_of(v.p0)}, {"p1", json_of(v.p1)}};
        } else if constexpr (std::is_same_v<T, ConeRadialSamplesDescriptor>) {
          d = {{"type", "radial_samples"}, {"phi", v.phi}, {"r", v.r}};
        } else {
          d = {{"type", "polyline"},
               {"vertices", json_of(v.vertices)},
               {"ray0", json_of(v.ray0)},
               {"ray1", json_of(v.ray1)}};
        }
      },
      body.descriptor());
  return {{"kind", "cone"}, {"descriptor", d}, {"r_max", body.r_max()}};
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    raise(Errc::kInvalidInput, path + ": " + e.what());
  }
}

BodySpec read_body(const std::string& path) { return parse_body(read_json(path)); }

Profile parse_profile(const Json& j) {
  return guarded("profile", [&] {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sqrt_cap") return Profile::sqrt_cap();
    if (type == "affine_cap") return Profile::affine_cap(j.at("c").get<double>());
    if (type == "lp_cap") return Profile::lp_cap(j.at("p").get<double>());
    if (type == "const") {
      return Profile::constant(j.at("value").get<double>(), j.at("m").get<double>(),
                               j.at("M").get<double>());
    }
    if (type == "samples") {
      return Profile::samples(j.at("v").get<std::vector<double>>(), j.at("f").get<std::vector<double>>());
    }
    raise(Errc::kInvalidInput, "unknown profile '" + type + "'");
  });
}

HeisenbergConfig parse_heisenberg_config(const Json& j) {
  return guarded("heisenberg config", [&] {
    HeisenbergConfig c;
    const BodySpec omega = parse_body(j.at("omega"));
    if (!omega.compact) raise(Errc::kInvalidInput, "omega must be a compact body");
    c.set.emplace(*omega.compact, parse_profile(j.at("profile")));
    if (j.contains("singular")) {
      const Json& s = j.at("singular");
      c.singular = true;
      c.singular_eta0 = s.value("eta0", 0.0);
      c.beta = parse_beta(s.at("beta"));
      c.singular_u3 = optional_of<double>(s, "u3");
      c.singular_A = s.value("A", 1.0);
    } else {
      const Json& p = j.at("params");
      c.params.family = p.value("family", 3);
      c.params.A = p.value("A", 1.0);
      c.params.h3 = p.value("h3", 1.0);
      c.params.eta0 = p.value("eta0", 0.0);
      c.params.branch = p.value("branch", 0);
      c.params.u3 = optional_of<double>(p, "u3");
      c.params.theta = optional_of<double>(p, "theta");
    }
    c.t_max = optional_of<double>(j, "t_max");
    c.dt = optional_of<double>(j, "dt");
    return c;
  });
}

LobachevskyParams parse_lobachevsky_params(const Json& j) {
  return guarded("lobachevsky params", [&] {
    LobachevskyParams p;
    const std::string kind = j.value("case", "generic");
    if (kind == "generic") {
      p.kind = LorentzKind::kTimelikeGeneric;
    } else if (kind == "horizontal") {
      p.kind = LorentzKind::kTimelikeSingularHorizontal;
    } else if (kind == "lightlike") {
      p.kind = LorentzKind::kLightlike;
    } else {
      raise(Errc::kInvalidInput, "case must be generic, horizontal or lightlike");
    }
    p.eta0 = j.value("eta0", 0.0);
    p.c1 = optional_of<double>(j, "c1");
    p.c2 = optional_of<double>(j, "c2");
    p.c3 = j.value("c3", 1.0);
    p.a0 = j.value("a0", 0.0);
    p.u1 = optional_of<double>(j, "u1");
    p.ray_index = j.value("ray_index", 0);
    return p;
  });
}

UnimodularParams parse_unimodular_params(const Json& j) {
  return guarded("unimodular params", [&] {
    UnimodularParams p;
    const std::string kind = j.value("kind", "timelike");
    if (kind != "timelike" && kind != "lightlike") {
      raise(Errc::kInvalidInput, "kind must be timelike or lightlike");
    }
    p.lightlike = kind == "lightlike";
    p.E = j.value("E", 1.0);
    p.eta0 = j.value("eta0", 0.0);
    p.sign = j.value("sign", 1);
    p.ray_index = j.value("ray_index", 0);
    p.switch_times = j.value("switch_times", std::vector<double>{});
    p.h3_0 = j.value("h3_0", 1.0);
    return p;
  });
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header_.size()) raise(Errc::kInvalidInput, "CSV row width mismatch");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Json CsvTable::to_json() const {
  Json rows = Json::array();
  for (const auto& row : rows_) {
    Json r = Json::array();
    // JSON has no inf/nan; they become null.
    for (double v : row) r.push_back(std::isfinite(v) ? Json(v) : Json(nullptr));
    rows.push_back(r);
  }
  return {{"columns", header_}, {"rows", rows}};
}

std::string svg_plot(const std::vector<Vec2>& trajectory, const std::vector<Vec2>& boundary,
                     bool boundary_closed) {
  double x0 = kInf;
  double x1 = -kInf;
  double y0 = kInf;
  double y1 = -kInf;
  for (const auto* pts : {&trajectory, &boundary}) {
    for (const Vec2& p : *pts) {
      if (!p.allFinite()) continue;
      x0 = std::min(x0, p.x());
      x1 = std::max(x1, p.x());
      y0 = std::min(y0, p.y());
      y1 = std::max(y1, p.y());
    }
  }
  if (!(x0 <= x1)) x0 = y0 = -1, x1 = y1 = 1;
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  auto pt = [](const Vec2& p) { return format_double(p.x()) + "," + format_double(-p.y()); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\""
    << static_cast<int>(std::ceil(600 * (y1 - y0) / (x1 - x0))) << "\" viewBox=\""
    << format_double(x0) << ' ' << format_double(-y1) << ' ' << format_double(x1 - x0) << ' '
    << format_double(y1 - y0) << "\">\n";
  if (!boundary.empty()) {
    s << "<path fill=\"none\" stroke=\"#777\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\" d=\"M";
    bool first = true;
    for (const Vec2& p : boundary) {
      if (!p.allFinite()) continue;
      s << (first ? "" : " L") << pt(p);
      first = false;
    }
    if (boundary_closed) s << " Z";
    s << "\"/>\n";
  }
  s << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\" points=\"";
  bool first = true;
  for (const Vec2& p : trajectory) {
    if (!p.allFinite()) continue;
    s << (first ? "" : " ") << pt(p);
    first = false;
  }
  s << "\"/>\n</svg>\n";
  return s.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::kInvalidInput, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      raise(Errc::kInvalidInput, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(Errc::kInvalidInput, "cannot rename onto " + path);
  }
}

}  // namespace geotrig
