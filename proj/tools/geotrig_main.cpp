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

// geotrig: command-line front end for body validation, trig tables, geodesic
// generation and verification.
//
// Exit codes: 0 success, 1 domain error, 2 verification failure, 3 I/O or
// internal error; usage errors use the CLI parser's codes.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geotrig/convex_bodies.hpp"
#include "geotrig/error.hpp"
#include "geotrig/geodesics_heisenberg.hpp"
#include "geotrig/geodesics_lorentz.hpp"
#include "geotrig/io.hpp"
#include "geotrig/kernels.hpp"
#include "geotrig/trig_compact.hpp"
#include "geotrig/trig_hyperbolic.hpp"
#include "geotrig/verify.hpp"

namespace {

using namespace geotrig;

constexpr int kExitDomain = 1;
constexpr int kExitVerify = 2;
constexpr int kExitInternal = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("geotrig");
  logger->set_pattern("geotrig: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("GEOTRIG_LOG")) {
    const std::string v = env;
    if (v == "error") {
      level = spdlog::level::err;
    } else if (v == "debug") {
      level = spdlog::level::debug;
    } else if (v != "info") {
      spdlog::warn("GEOTRIG_LOG={} is not one of error, info, debug; using info", v);
    }
  }
  spdlog::set_level(level);
}

struct Output {
  std::string path = "-";
  std::string format = "csv";
};

void add_output(CLI::App* cmd, Output& out, bool svg = true) {
  cmd->add_option("--out", out.path, "output path, - for stdout")->capture_default_str();
  std::vector<std::string> formats = {"csv", "json"};
  if (svg) formats.push_back("svg");
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
}

struct GridArgs {
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<int> n_samples;
};

void add_grid(CLI::App* cmd, GridArgs& g) {
  cmd->add_option("--t-max", g.t_max, "final time");
  cmd->add_option("--dt", g.dt, "time step");
  cmd->add_option("--n-samples", g.n_samples, "number of samples including t = 0")
      ->excludes(cmd->get_option("--dt"));
}

// [0, t_max] with step dt (the last step may be shorter) or with n_samples
// evenly spaced points. Defaults to 1001 samples.
std::vector<double> make_grid(std::optional<double> t_max, std::optional<double> dt,
                              std::optional<int> n_samples) {
  if (!t_max) raise(Errc::kInvalidInput, "--t-max is required");
  if (!std::isfinite(*t_max) || *t_max <= 0) raise(Errc::kInvalidInput, "--t-max must be positive");
  std::vector<double> g;
  if (dt) {
    if (!std::isfinite(*dt) || *dt <= 0) raise(Errc::kInvalidInput, "--dt must be positive");
    const double steps = std::ceil(*t_max / *dt - 1e-9);
    if (steps > 5e7) raise(Errc::kInvalidInput, "grid too large");
    const long n = static_cast<long>(steps);
    for (long i = 0; i < n; ++i) g.push_back(static_cast<double>(i) * *dt);
    g.push_back(*t_max);
    return g;
  }
  const int n = n_samples.value_or(1001);
  if (n < 2) raise(Errc::kInvalidInput, "--n-samples must be at least 2");
  for (int i = 0; i < n; ++i) g.push_back(*t_max * i / (n - 1));
  return g;
}

void emit(const CsvTable& table, const Output& out, const std::vector<Vec2>& trajectory,
          const std::vector<Vec2>& boundary, bool closed) {
  std::string text;
  if (out.format == "csv") {
    text = table.str();
  } else if (out.format == "json") {
    text = table.to_json().dump(2) + "\n";
  } else {
    text = svg_plot(trajectory, boundary, closed);
  }
  write_file_atomic(out.path, text);
  spdlog::info("wrote {} rows to {}", table.rows().size(), out.path == "-" ? "stdout" : out.path);
}

void emit_json(const Json& j, const std::string& path) { write_file_atomic(path, j.dump(2) + "\n"); }

std::vector<Vec2> compact_outline(const ConvexBody& body, int n = 720) {
  std::vector<Vec2> out;
  for (int k = 0; k < n; ++k) out.push_back(body.boundary_point(kTwoPi * k / n));
  return out;
}

// Boundary of a cone body out to a radius covering the trajectory.
std::vector<Vec2> cone_outline(const ConeBody& body, const std::vector<Vec2>& trajectory) {
  double r = 4 * body.min_radius();
  for (const Vec2& p : trajectory) {
    if (std::isfinite(p.norm())) r = std::max(r, 1.2 * p.norm());
  }
  return boundary_samples(body, r, 800);
}

const ConvexBody& need_compact(const BodySpec& b) {
  if (!b.compact) raise(Errc::kInvalidInput, "expected a compact body");
  return *b.compact;
}

const ConeBody& need_cone(const BodySpec& b) {
  if (!b.cone) raise(Errc::kInvalidInput, "expected a cone body");
  return *b.cone;
}

int body_validate(const std::string& path, const std::string& out) {
  const BodySpec b = read_body(path);
  Json report;
  if (b.compact) {
    report = {{"kind", "compact"}, {"valid", true}, {"area", b.compact->area()}};
  } else {
    const ConeBody& c = *b.cone;
    const PropertyReport p = check_properties(c);
    const Vec2 cp = c.closest_point();
    report = {{"kind", "cone"},
              {"valid", p.i},
              {"i", p.i},
              {"star", p.star},
              {"star_star", p.star_star},
              {"approximate", p.approximate},
              {"closest_point", {cp.x(), cp.y()}},
              {"cone_angles", {c.phi0(), c.phi1()}}};
  }
  emit_json(report, out);
  return 0;
}

int body_dual(const std::string& path, const std::string& out) {
  const BodySpec b = read_body(path);
  emit_json(b.compact ? body_to_json(polar(*b.compact)) : body_to_json(antipolar(*b.cone)), out);
  return 0;
}

int trig_table_cmd(const std::string& path, int n, const Output& out) {
  if (n < 1) raise(Errc::kInvalidInput, "--n-samples must be positive");
  const CompactTrig ev(need_compact(read_body(path)));
  std::vector<double> thetas;
  for (int i = 0; i < n; ++i) thetas.push_back(ev.period() * i / n);
  CsvTable table({"theta", "cos_omega", "sin_omega", "eta_lo", "eta_hi", "cos_polar", "sin_polar"});
  std::vector<Vec2> polar_points;
  for (const TrigRow& r : trig_table(ev, thetas)) {
    table.add_row({r.theta, r.x, r.y, r.eta_lo, r.eta_hi, r.dual_x, r.dual_y});
    polar_points.emplace_back(r.dual_x, r.dual_y);
  }
  polar_points.push_back(polar_points.front());
  emit(table, out, polar_points, compact_outline(ev.body()), true);
  return 0;
}

int hyper_table_cmd(const std::string& path, int n, double theta_max, const Output& out) {
  if (n < 2) raise(Errc::kInvalidInput, "--n-samples must be at least 2");
  if (!(theta_max > 0)) raise(Errc::kInvalidInput, "--theta-max must be positive");
  const BodySpec b = read_body(path);
  const HyperTrig ev(need_cone(b), b.hyper);
  const Interval d = ev.domain();
  const double pad = 1e-6 * std::min(d.hi - d.lo, 2 * theta_max);
  const double lo = d.lo > -theta_max ? d.lo + pad : -theta_max;
  const double hi = d.hi < theta_max ? d.hi - pad : theta_max;
  std::vector<double> thetas;
  for (int i = 0; i < n; ++i) thetas.push_back(lo + (hi - lo) * i / (n - 1));
  CsvTable table({"theta", "cosh_omega", "sinh_omega", "eta_lo", "eta_hi", "cosh_anti", "sinh_anti"});
  std::vector<Vec2> points;
  for (const TrigRow& r : hyper_table(ev, thetas)) {
    table.add_row({r.theta, r.x, r.y, r.eta_lo, r.eta_hi, r.dual_x, r.dual_y});
    points.emplace_back(r.x, r.y);
  }
  emit(table, out, points, cone_outline(ev.body(), points), false);
  return 0;
}

int heisenberg_cmd(const std::string& config_path, const GridArgs& g, const Output& out) {
  const HeisenbergConfig cfg = parse_heisenberg_config(read_json(config_path));
  const std::vector<double> ts =
      make_grid(g.t_max ? g.t_max : cfg.t_max, g.dt ? g.dt : (g.n_samples ? std::nullopt : cfg.dt),
                g.n_samples);
  const HeisenbergTrajectory traj =
      cfg.singular ? heisenberg_singular_x3(*cfg.set, cfg.singular_eta0, cfg.beta, ts, cfg.singular_u3,
                                            cfg.singular_A)
                   : heisenberg_extremal(*cfg.set, cfg.params, ts);
  CsvTable table({"t", "x1", "x2", "x3", "u1", "u2", "u3", "h1", "h2", "h3"});
  std::vector<Vec2> xy;
  for (const HeisenbergSample& s : traj) {
    table.add_row({s.t, s.x(0), s.x(1), s.x(2), s.u(0), s.u(1), s.u(2), s.h(0), s.h(1), s.h(2)});
    xy.emplace_back(s.x(0), s.x(1));
  }
  emit(table, out, xy, compact_outline(cfg.set->omega()), true);
  return 0;
}

void emit_lorentz(const GroupSpec& group, const ConeBody& body,
                  const std::vector<LorentzSample>& samples, const Output& out) {
  std::vector<std::string> header = {"t"};
  for (const std::string& c : group.chart_names()) header.push_back(c);
  for (const char* c : {"u1", "u2", "h1", "h2", "h3", "eta", "E_residual"}) header.emplace_back(c);
  CsvTable table(header);
  std::vector<Vec2> proj;
  for (const LorentzSample& s : samples) {
    std::vector<double> row = {s.t};
    row.insert(row.end(), s.q.begin(), s.q.end());
    row.insert(row.end(), {s.u.x(), s.u.y(), s.h.x(), s.h.y(), s.h.z(), s.eta, s.E_residual});
    table.add_row(row);
    proj.emplace_back(s.q.at(0), s.q.at(1));
  }
  emit(table, out, proj, cone_outline(body, proj), false);
}

int lobachevsky_cmd(const std::string& group_name, const std::string& body_path,
                    const std::string& params_path, const GridArgs& g, const Output& out) {
  const GroupSpec group = GroupSpec::parse(group_name);
  if (group.name != GroupName::kAffR) {
    raise(Errc::kInvalidInput, "geodesic lobachevsky runs on aff_r, got " + group_name);
  }
  const BodySpec b = read_body(body_path);
  const HyperTrig ev(need_cone(b), b.hyper);
  const LobachevskyParams params = parse_lobachevsky_params(read_json(params_path));
  const auto ts = make_grid(g.t_max, g.dt, g.n_samples);
  emit_lorentz(group, ev.body(), lobachevsky_extremal(ev, params, ts), out);
  return 0;
}

int unimodular_cmd(const std::string& group_name, const std::string& body_path,
                   const std::string& params_path, const GridArgs& g, const Output& out) {
  const GroupSpec group = GroupSpec::parse(group_name);
  if (!group.unimodular()) raise(Errc::kInvalidInput, group_name + " is not unimodular");
  const BodySpec b = read_body(body_path);
  const ConeBody& body = need_cone(b);
  const UnimodularParams p = parse_unimodular_params(read_json(params_path));
  const auto ts = make_grid(g.t_max, g.dt, g.n_samples);
  if (p.lightlike) {
    emit_lorentz(group, body, lightlike_extremal(body, group, p.ray_index, p.switch_times, ts, p.h3_0),
                 out);
  } else {
    const HyperTrig ev(body, b.hyper);
    emit_lorentz(group, body, unimodular_extremal(ev, group, p.E, p.eta0, p.sign, ts), out);
  }
  return 0;
}

int verify_cmd(const std::string& suite_name_arg, std::uint64_t seed, bool serial,
               const std::optional<std::string>& json_out) {
  VerifyOptions opts;
  opts.seed = seed;
  opts.exec = serial ? Exec::kSerial : Exec::kParallel;
  const Suite suite = parse_suite(suite_name_arg);
  spdlog::info("running suite {} (seed {}, {} threads)", suite_name(suite), seed,
               serial ? 1 : kernel_threads());
  const auto reports = run_suite(suite, opts);
  std::fputs(report_table(reports).c_str(), stdout);
  Json j = report_json(reports);
  j["suite"] = std::string(suite_name(suite));
  j["seed"] = seed;
  if (json_out) {
    emit_json(j, *json_out);
  } else {
    std::fputs((j.dump(2) + "\n").c_str(), stdout);
  }
  std::fflush(stdout);
  const long failed = std::count_if(reports.begin(), reports.end(),
                                    [](const OracleReport& r) { return !r.passed; });
  if (failed > 0) {
    spdlog::error("{} of {} checks failed", failed, reports.size());
    return kExitVerify;
  }
  spdlog::info("all {} checks passed", reports.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Convex trigonometry, dual bodies and geodesics of left-invariant problems"};
  app.name("geotrig");
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  std::string body_path;
  std::string body_out = "-";
  CLI::App* body = app.add_subcommand("body", "inspect a body description");
  body->require_subcommand(1);
  CLI::App* validate = body->add_subcommand("validate", "construct a body and report its properties");
  CLI::App* dual = body->add_subcommand("dual", "polar or antipolar body as JSON");
  for (CLI::App* c : {validate, dual}) {
    c->add_option("--body", body_path, "body JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--out", body_out, "output path, - for stdout")->capture_default_str();
  }

  Output table_out;
  int table_n = 0;
  double theta_max = 3;
  CLI::App* trig = app.add_subcommand("trig-table", "cos/sin of a compact body with the polar dual");
  CLI::App* hyper = app.add_subcommand("hyper-table", "cosh/sinh of a cone body with the antipolar dual");
  for (CLI::App* c : {trig, hyper}) {
    c->add_option("--body", body_path, "body JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--n-samples", table_n, "number of angles");
    add_output(c, table_out);
  }
  hyper->add_option("--theta-max", theta_max, "clip the domain to [-theta_max, theta_max]")
      ->capture_default_str();

  CLI::App* geo = app.add_subcommand("geodesic", "generate an extremal trajectory");
  geo->require_subcommand(1);
  std::string config_path;
  std::string params_path;
  std::string group_name;
  GridArgs grid;
  Output geo_out;
  CLI::App* heis = geo->add_subcommand("heisenberg", "Heisenberg group extremal");
  heis->add_option("--config", config_path, "control set and parameters")
      ->required()
      ->check(CLI::ExistingFile);
  CLI::App* lob = geo->add_subcommand("lobachevsky", "Lobachevsky plane extremal on aff_r");
  CLI::App* uni = geo->add_subcommand("unimodular", "extremal on a unimodular 3D group");
  for (CLI::App* c : {lob, uni}) {
    c->add_option("--body", body_path, "body JSON")->required()->check(CLI::ExistingFile);
    c->add_option("--params", params_path, "extremal parameters")->required()->check(CLI::ExistingFile);
  }
  lob->add_option("--group", group_name, "group (aff_r)")->default_val("aff_r");
  uni->add_option("--group", group_name, "h3, se2, sh2, sl2_a_plus, sl2_a_minus, su2")->required();
  for (CLI::App* c : {heis, lob, uni}) {
    add_grid(c, grid);
    add_output(c, geo_out);
  }

  std::string suite = "all";
  bool serial = false;
  std::optional<std::string> verify_json;
  CLI::App* verify = app.add_subcommand("verify", "run oracle checks");
  verify->add_option("--suite", suite, "duality, trig, heisenberg, lobachevsky, unimodular, all")
      ->check(CLI::IsMember({"duality", "trig", "heisenberg", "lobachevsky", "unimodular", "all"}))
      ->capture_default_str();
  verify->add_option("--json", verify_json, "write the JSON report here instead of stdout");
  verify->add_flag("--serial", serial, "use the serial kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (validate->parsed()) return body_validate(body_path, body_out);
    if (dual->parsed()) return body_dual(body_path, body_out);
    if (trig->parsed()) return trig_table_cmd(body_path, table_n > 0 ? table_n : 360, table_out);
    if (hyper->parsed()) {
      return hyper_table_cmd(body_path, table_n > 0 ? table_n : 601, theta_max, table_out);
    }
    if (heis->parsed()) return heisenberg_cmd(config_path, grid, geo_out);
    if (lob->parsed()) return lobachevsky_cmd(group_name, body_path, params_path, grid, geo_out);
    if (uni->parsed()) return unimodular_cmd(group_name, body_path, params_path, grid, geo_out);
    if (verify->parsed()) return verify_cmd(suite, seed, serial, verify_json);
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kExitDomain;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
