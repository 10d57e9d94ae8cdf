#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "fockpack/certify.hpp"
#include "fockpack/density.hpp"
#include "fockpack/errors.hpp"
#include "fockpack/fock.hpp"
#include "fockpack/json.hpp"
#include "fockpack/lattice.hpp"
#include "fockpack/point_io.hpp"
#include "fockpack/version.hpp"

namespace fockpack::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// config <-> json

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

json p_to_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

double p_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return FockParams::p_infinity;
    throw InvalidInput("config field p must be a number or \"inf\"");
  }
  return j.get<double>();
}

// ---------------------------------------------------------------------------
// helpers

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidInput(message);
}

PointSet load_points(const RunConfig& cfg) {
  require(cfg.input.has_value(), cfg.command + " requires --input");
  if (*cfg.input == "-") return read_points_csv(std::cin);
  return read_points(*cfg.input);
}

std::vector<Complex> load_targets(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read targets file " + path);
  std::vector<Complex> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; }),
               line.end());
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    double re = 0.0, im = 0.0;
    const auto parse = [](std::string_view s, double& v) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty() && std::isfinite(v);
    };
    const bool ok = comma != std::string::npos &&
                    parse(std::string_view(line).substr(0, comma), re) &&
                    parse(std::string_view(line).substr(comma + 1), im);
    require(ok, "targets line " + std::to_string(lineno) + ": expected finite \"re,im\"");
    out.emplace_back(re, im);
  }
  return out;
}

LatticeSpec lattice_spec(const RunConfig& cfg) {
  LatticeSpec spec{parse_lattice_kind(cfg.kind), cfg.spacing, {cfg.offset_x, cfg.offset_y},
                   cfg.rotation};
  spec.validate();
  return spec;
}

FockParams fock_params(const RunConfig& cfg) {
  FockParams params{cfg.alpha, cfg.p};
  params.validate();
  return params;
}

// Radii, center region and center step for the density-style commands.
struct SweepSetup {
  double separation;
  std::vector<double> radii;
  Region zeta_region;
  GridSpec zeta_grid;
};

SweepSetup sweep_setup(RunConfig& cfg, const PointSet& ps) {
  SweepSetup s;
  s.separation = min_separation(ps);
  if (cfg.radii.empty()) cfg.radii = default_radii(s.separation);
  if (!cfg.window) cfg.window = 2.0 * s.separation;
  if (!cfg.zeta_step) cfg.zeta_step = s.separation / 4.0;
  s.radii = cfg.radii;
  s.zeta_region = Region::centered(*cfg.window);
  s.zeta_grid = GridSpec{*cfg.zeta_step};
  return s;
}

// ---------------------------------------------------------------------------
// commands; each may fill data-dependent defaults into cfg

json cmd_thresholds(RunConfig& cfg) {
  const auto params = fock_params(cfg);
  const double tung = tung_threshold(params);
  const double improved = improved_interpolation_threshold(params);
  return {{"tung", tung},
          {"improved", improved},
          {"covering", covering_sampling_threshold(params)},
          {"critical", critical_density(params)},
          {"improved_over_tung", improved / tung}};
}

json cmd_lattice(RunConfig& cfg, std::ostream& out) {
  const auto spec = lattice_spec(cfg);
  if (!cfg.window) cfg.window = 20.0 * cfg.spacing;
  if (!cfg.pad) {
    cfg.pad = cfg.radii.empty() ? default_radii(cfg.spacing).back() : cfg.radii.back();
  }
  require(*cfg.window > 0.0 && *cfg.pad >= 0.0, "--window must be positive and --pad nonnegative");
  const Region region = Region::centered(*cfg.window + 2.0 * *cfg.pad);
  PointSet ps = generate(spec, region);
  if (cfg.perturb > 0.0) ps = perturb(ps, cfg.perturb, cfg.seed);

  if (cfg.output) {
    write_points(*cfg.output, ps);
  } else {
    write_points_csv(out, ps);
  }
  json result = {{"kind", to_string(spec.kind)},
                 {"spacing", spec.spacing},
                 {"region", region},
                 {"count", ps.size()},
                 {"nominal_density", lattice_density(spec)}};
  if (ps.size() >= 2) result["min_separation"] = min_separation(ps);
  if (cfg.output) result["points_file"] = *cfg.output;
  return result;
}

json cmd_separation(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  return {{"count", ps.size()}, {"min_separation", min_separation(ps)}};
}

// Default scans are coarsened to stay near this many grid samples.
constexpr double kDefaultScanSamples = 4e6;

double scan_budget_step(const Region& region) {
  return std::sqrt(region.width() * region.height() / kDefaultScanSamples);
}

json cmd_cover(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  require(!ps.empty(), "cover needs a nonempty point set");
  const Region region = cfg.window ? Region::centered(*cfg.window) : ps.bounding_box();
  region.validate();
  if (!cfg.grid_step) {
    const double fine = ps.size() >= 2 ? min_separation(ps) / 50.0
                                       : std::min(region.width(), region.height()) / 100.0;
    cfg.grid_step = std::max(fine, scan_budget_step(region));
  }
  const GridSpec grid{*cfg.grid_step};
  const auto scan = covering_scan(ps, region, grid);
  json result = {{"count", ps.size()},
                 {"region", region},
                 {"grid_step", grid.step},
                 {"samples", scan.samples},
                 {"covering_radius", scan.radius},
                 {"margin", grid_margin(grid)},
                 {"covering_radius_upper", scan.radius + grid_margin(grid)},
                 {"deepest_point", scan.deepest}};
  if (cfg.sigma) result["covering"] = is_covering(ps, *cfg.sigma, region, grid);
  return result;
}

json cmd_density(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  const auto s = sweep_setup(cfg, ps);
  const auto profile = density_profile(ps, s.radii, s.zeta_region, s.zeta_grid);
  return {{"count", ps.size()},
          {"min_separation", s.separation},
          {"profile", profile},
          {"upper", estimate_upper_density(profile)},
          {"lower", estimate_lower_density(profile)},
          {"separation_bound", separation_density_bound(s.separation)},
          {"label", "empirical"}};
}

json cmd_packing(RunConfig& cfg) {
  auto ps = load_points(cfg);
  const auto s = sweep_setup(cfg, ps);
  if (!cfg.r0) cfg.r0 = s.separation / 2.0;
  const PackingConfig pc{std::move(ps), *cfg.r0};
  const auto est = packing_density(pc, s.radii, s.zeta_region, s.zeta_grid);
  return {{"r0", pc.r0},
          {"packing_density", est},
          {"hexagonal_optimum", std::numbers::pi / std::sqrt(12.0)}};
}

json cmd_covering(RunConfig& cfg) {
  auto ps = load_points(cfg);
  const auto s = sweep_setup(cfg, ps);
  if (!cfg.r0) {
    // Fine scan of the center region, rounded up by the grid margin, then
    // raised until the covering check over the whole counting window passes.
    const GridSpec fine{s.separation / 400.0};
    double r0 = covering_radius(ps, s.zeta_region, fine) + grid_margin(fine);
    const Region window = s.zeta_region.expanded(s.radii.back());
    for (int round = 0; round < 16; ++round) {
      const GridSpec check{std::min(s.zeta_grid.step, r0 / 4.0)};
      const double reached = covering_scan(ps, window, check).radius;
      if (reached <= r0) break;
      r0 = reached;
    }
    cfg.r0 = r0;
  }
  const PackingConfig pc{std::move(ps), *cfg.r0};
  const auto est = covering_density(pc, s.radii, s.zeta_region, s.zeta_grid);
  return {{"r0", pc.r0},
          {"covering_density", est},
          {"hexagonal_optimum", 2.0 * std::numbers::pi / (3.0 * std::numbers::sqrt3)}};
}

json cmd_certify_interp(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  const auto params = fock_params(cfg);
  const auto cert = certify_interpolating_by_separation(ps, params);
  const double tung = tung_threshold(params);
  const double improved = improved_interpolation_threshold(params);
  const bool tung_ok = cert.sigma > tung;
  const bool improved_ok = cert.sigma > improved;
  json comparison = {{"separation", cert.sigma},
                     {"tung_threshold", tung},
                     {"improved_threshold", improved},
                     {"tung_certifies", tung_ok},
                     {"improved_certifies", improved_ok},
                     {"improvement_gap", improved_ok && !tung_ok}};
  if (improved_ok && !tung_ok) {
    comparison["gap_note"] =
        "certified only by the improved separation constant; Tung's 2/sqrt(alpha) is not met";
  }
  return {{"params", params}, {"certificate", cert}, {"comparison", comparison}};
}

json cmd_certify_sampling(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  const auto params = fock_params(cfg);
  const double sigma = *cfg.sigma;
  require(!ps.empty(), "certify-sampling needs a nonempty point set");
  Region region;
  if (cfg.window) {
    region = Region::centered(*cfg.window);
  } else {
    region = ps.bounding_box().expanded(-2.0 * sigma);
    require(region.is_valid(), "point set too small for the default region; pass --window");
  }
  if (!cfg.grid_step) {
    // sigma/200, coarsened if the scan would exceed kDefaultScanSamples.
    cfg.grid_step = std::max(sigma / 200.0, scan_budget_step(region));
  }
  const auto cert = certify_sampling_by_covering(ps, sigma, region, GridSpec{*cfg.grid_step}, params);
  return {{"params", params},
          {"region", region},
          {"certificate", cert},
          {"threshold", covering_sampling_threshold(params)}};
}

json gram_entries(const GramMatrix& g) {
  json rows = json::array();
  for (Eigen::Index m = 0; m < g.size(); ++m) {
    json row = json::array();
    for (Eigen::Index k = 0; k < g.size(); ++k) row.push_back(complex_to_json(g.entries(m, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json cmd_fock_gram(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  const auto g = gram(cfg.alpha, ps);
  const auto ext = eig_extremes(g, cfg.tol);
  return {{"n", g.size()},
          {"alpha", cfg.alpha},
          {"gershgorin_lower_bound", gershgorin_riesz_lower_bound(g)},
          {"lambda_min", ext.lambda_min},
          {"lambda_max", ext.lambda_max},
          {"trace", g.entries.trace().real()},
          {"label", "finite-section"},
          {"entries", gram_entries(g)}};
}

json cmd_fock_interp(RunConfig& cfg) {
  const auto ps = load_points(cfg);
  require(!ps.empty(), "fock-interp needs a nonempty point set");
  std::vector<Complex> targets;
  json target_desc;
  if (cfg.targets) {
    targets = load_targets(*cfg.targets);
    target_desc = *cfg.targets;
  } else {
    // Weighted Kronecker delta at the node nearest the origin.
    std::size_t k = 0;
    for (std::size_t i = 1; i < ps.size(); ++i) {
      if (squared_distance(ps[i], {}) < squared_distance(ps[k], {})) k = i;
    }
    targets.assign(ps.size(), Complex{});
    targets[k] = std::exp(0.5 * cfg.alpha * squared_distance(ps[k], {}));
    target_desc = {{"weighted_delta_at", k}};
  }
  const auto sol = interpolate(cfg.alpha, ps, targets);
  return {{"n", ps.size()},
          {"alpha", cfg.alpha},
          {"targets", target_desc},
          {"solution", sol},
          {"gershgorin_lower_bound", gershgorin_riesz_lower_bound(gram(cfg.alpha, ps))},
          {"sampling_constant_proxy", std::sqrt(sol.condition)},
          {"label", "finite-section"}};
}

json cmd_fock_sweep(RunConfig& cfg) {
  if (cfg.spacings.empty()) cfg.spacings = {2.2, 2.0, 1.8, 1.6};
  const auto rows = conditioning_sweep(cfg.alpha, cfg.spacings, cfg.patch_radius);
  if (cfg.csv) {
    std::ofstream out(*cfg.csv);
    require(static_cast<bool>(out), "cannot write CSV file " + *cfg.csv);
    out << conditioning_csv(rows);
  }
  return {{"alpha", cfg.alpha},
          {"patch_radius", cfg.patch_radius},
          {"rows", rows},
          {"label", "finite-section"}};
}

void append_value(std::ostream& os, const json& v) {
  char buf[64];
  if (v.is_number_float()) {
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    os << buf;
  } else if (v.is_string()) {
    os << v.get<std::string>();
  } else {
    os << v.dump();
  }
}

void summarize_into(std::ostream& os, const json& node, const std::string& prefix) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      summarize_into(os, value, prefix.empty() ? key : prefix + "." + key);
    }
    return;
  }
  if (node.is_array()) {
    const bool flat = std::all_of(node.begin(), node.end(), [](const json& e) { return e.is_primitive(); });
    if (!flat || node.size() > 8) {
      if (!node.empty() && node.size() <= 8) {
        for (std::size_t i = 0; i < node.size(); ++i) {
          summarize_into(os, node[i], prefix + "[" + std::to_string(i) + "]");
        }
      } else {
        os << prefix << ": [" << node.size() << " items]\n";
      }
      return;
    }
    os << prefix << ": [";
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (i) os << ", ";
      append_value(os, node[i]);
    }
    os << "]\n";
    return;
  }
  os << prefix << ": ";
  append_value(os, node);
  os << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write report file " + path);
  out << text;
}

}  // namespace

nlohmann::json config_to_json(const RunConfig& cfg) {
  json j = {{"command", cfg.command},
            {"alpha", cfg.alpha},
            {"p", p_to_json(cfg.p)},
            {"kind", cfg.kind},
            {"spacing", cfg.spacing},
            {"rotation", cfg.rotation},
            {"offset", {cfg.offset_x, cfg.offset_y}},
            {"radii", cfg.radii},
            {"perturb", cfg.perturb},
            {"seed", cfg.seed},
            {"tol", cfg.tol},
            {"spacings", cfg.spacings},
            {"patch_radius", cfg.patch_radius}};
  put_optional(j, "input", cfg.input);
  put_optional(j, "output", cfg.output);
  put_optional(j, "report", cfg.report);
  put_optional(j, "csv", cfg.csv);
  put_optional(j, "targets", cfg.targets);
  put_optional(j, "window", cfg.window);
  put_optional(j, "pad", cfg.pad);
  put_optional(j, "zeta_step", cfg.zeta_step);
  put_optional(j, "grid_step", cfg.grid_step);
  put_optional(j, "sigma", cfg.sigma);
  put_optional(j, "r0", cfg.r0);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  try {
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("p")) cfg.p = p_from_json(j["p"]);
    cfg.kind = j.value("kind", cfg.kind);
    cfg.spacing = j.value("spacing", cfg.spacing);
    cfg.rotation = j.value("rotation", cfg.rotation);
    if (j.contains("offset")) {
      cfg.offset_x = j["offset"].at(0).get<double>();
      cfg.offset_y = j["offset"].at(1).get<double>();
    }
    cfg.radii = j.value("radii", cfg.radii);
    cfg.perturb = j.value("perturb", cfg.perturb);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.spacings = j.value("spacings", cfg.spacings);
    cfg.patch_radius = j.value("patch_radius", cfg.patch_radius);
    get_optional(j, "input", cfg.input);
    get_optional(j, "output", cfg.output);
    get_optional(j, "report", cfg.report);
    get_optional(j, "csv", cfg.csv);
    get_optional(j, "targets", cfg.targets);
    get_optional(j, "window", cfg.window);
    get_optional(j, "pad", cfg.pad);
    get_optional(j, "zeta_step", cfg.zeta_step);
    get_optional(j, "grid_step", cfg.grid_step);
    get_optional(j, "sigma", cfg.sigma);
    get_optional(j, "r0", cfg.r0);
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed run configuration: ") + e.what());
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "lattice",   "separation",       "cover",     "density",     "packing",    "covering",
      "certify-interp", "certify-sampling", "fock-gram", "fock-interp", "fock-sweep", "thresholds"};
  return names;
}

void validate(const RunConfig& cfg) {
  const auto& names = command_names();
  require(std::find(names.begin(), names.end(), cfg.command) != names.end(),
          "unknown command '" + cfg.command + "'");
  const auto& c = cfg.command;
  require(std::isfinite(cfg.alpha) && cfg.alpha > 0.0, "--alpha must be positive");
  require(cfg.p > 0.0, "--p must be in (0, inf]");
  require(std::isfinite(cfg.tol) && cfg.tol > 0.0, "--tol must be positive");
  const bool needs_input = c != "lattice" && c != "thresholds" && c != "fock-sweep";
  if (needs_input) require(cfg.input.has_value(), c + " requires --input");
  if (c == "certify-sampling") require(cfg.sigma.has_value(), "certify-sampling requires --sigma");
  if (c != "lattice") require(!cfg.report.has_value(), "--report is only used by lattice (use --output)");
  if (c == "lattice") {
    parse_lattice_kind(cfg.kind);
    require(std::isfinite(cfg.spacing) && cfg.spacing > 0.0, "--spacing must be positive");
    require(cfg.perturb >= 0.0, "--perturb must be nonnegative");
  }
  if (cfg.window) require(*cfg.window > 0.0, "--window must be positive");
  if (cfg.pad) require(*cfg.pad >= 0.0, "--pad must be nonnegative");
  if (cfg.zeta_step) require(*cfg.zeta_step > 0.0, "--zeta-step must be positive");
  if (cfg.grid_step) require(*cfg.grid_step > 0.0, "--grid-step must be positive");
  if (cfg.sigma) require(*cfg.sigma > 0.0, "--sigma must be positive");
  if (cfg.r0) require(*cfg.r0 > 0.0, "--r0 must be positive");
  if (!cfg.radii.empty()) validate_radii(cfg.radii);
  require(cfg.patch_radius > 0.0, "--patch-radius must be positive");
}

nlohmann::json execute(const RunConfig& input_cfg, std::ostream& out) {
  validate(input_cfg);
  RunConfig cfg = input_cfg;
  json result;
  const auto& c = cfg.command;
  if (c == "thresholds") result = cmd_thresholds(cfg);
  else if (c == "lattice") result = cmd_lattice(cfg, out);
  else if (c == "separation") result = cmd_separation(cfg);
  else if (c == "cover") result = cmd_cover(cfg);
  else if (c == "density") result = cmd_density(cfg);
  else if (c == "packing") result = cmd_packing(cfg);
  else if (c == "covering") result = cmd_covering(cfg);
  else if (c == "certify-interp") result = cmd_certify_interp(cfg);
  else if (c == "certify-sampling") result = cmd_certify_sampling(cfg);
  else if (c == "fock-gram") result = cmd_fock_gram(cfg);
  else if (c == "fock-interp") result = cmd_fock_interp(cfg);
  else if (c == "fock-sweep") result = cmd_fock_sweep(cfg);
  return {{"tool", "fockpack"},
          {"version", kVersion},
          {"command", c},
          {"config", config_to_json(cfg)},
          {"result", std::move(result)}};
}

nlohmann::json execute(const RunConfig& cfg) {
  std::ostringstream sink;
  return execute(cfg, sink);
}

std::string summarize(const nlohmann::json& result) {
  std::ostringstream os;
  summarize_into(os, result, "");
  return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const json report = execute(cfg, out);
    const std::string text = report.dump(2) + "\n";
    const auto& path = cfg.command == "lattice" ? cfg.report : cfg.output;
    if (path) {
      write_text(*path, text);
      if (cfg.command != "lattice" || cfg.output) out << summarize(report["result"]);
    } else if (cfg.command != "lattice") {
      out << text;
    }
    return kExitOk;
  } catch (const InvalidInput& e) {
    err << "fockpack " << cfg.command << ": " << e.what() << '\n';
    return kExitValidation;
  } catch (const ComputationError& e) {
    err << "fockpack " << cfg.command << ": " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "fockpack " << cfg.command << ": " << e.what() << '\n';
    return kExitComputation;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fockpack: point-set densities and Fock-space interpolation/sampling certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  RunConfig cfg;
  std::string p_text = "2";
  std::string replay_path;
  std::optional<std::string> replay_output;

  const auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "Gaussian weight parameter alpha > 0")->capture_default_str();
    sub->add_option("--p", p_text, "Fock exponent p in (0, inf], reported only")->capture_default_str();
  };
  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "point file (.csv or .json; '-' reads CSV from stdin)");
    sub->add_option("--output", cfg.output, "JSON report path (default: stdout)");
  };
  const auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--radii", cfg.radii, "comma-separated radii (default 10,15,20,30,40 x separation)")
        ->delimiter(',');
    sub->add_option("--window", cfg.window, "side of the centered center-sweep region (default 2 x separation)");
    sub->add_option("--zeta-step", cfg.zeta_step, "center-sweep grid step (default separation/4)");
  };

  std::vector<CLI::App*> subs;
  const auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    subs.push_back(sub);
    return sub;
  };

  auto* lattice = add("lattice", "generate a hexagonal or square lattice point set");
  lattice->add_option("--kind", cfg.kind, "hex | square")->capture_default_str();
  lattice->add_option("--spacing", cfg.spacing, "nearest-neighbor distance")->capture_default_str();
  lattice->add_option("--rotation", cfg.rotation, "rotation in radians")->capture_default_str();
  lattice->add_option("--offset-x", cfg.offset_x, "lattice offset x");
  lattice->add_option("--offset-y", cfg.offset_y, "lattice offset y");
  lattice->add_option("--window", cfg.window, "core window side, centered at origin (default 20 x spacing)");
  lattice->add_option("--pad", cfg.pad, "extra margin on each side (default = max radius)");
  lattice->add_option("--radii", cfg.radii, "radii the data will be used with (sets the default pad)")
      ->delimiter(',');
  lattice->add_option("--perturb", cfg.perturb, "random displacement magnitude");
  lattice->add_option("--seed", cfg.seed, "perturbation seed");
  lattice->add_option("--output", cfg.output, "point file (.csv or .json; default CSV on stdout)");
  lattice->add_option("--report", cfg.report, "JSON report path");

  auto* separation = add("separation", "minimum pairwise distance");
  add_io(separation);

  auto* cover = add("cover", "grid-scan covering radius, optional covering test at --sigma");
  add_io(cover);
  cover->add_option("--window", cfg.window, "side of the centered scan region (default: bounding box)");
  cover->add_option("--grid-step", cfg.grid_step, "scan step (default separation/50, coarsened to keep about 4M samples)");
  cover->add_option("--sigma", cfg.sigma, "disk radius to test");

  auto* density = add("density", "empirical upper and lower densities");
  add_io(density);
  add_sweep(density);

  auto* packing = add("packing", "packing density of equal disks at the points");
  add_io(packing);
  add_sweep(packing);
  packing->add_option("--r0", cfg.r0, "disk radius (default separation/2)");

  auto* covering = add("covering", "covering density of equal disks at the points");
  add_io(covering);
  add_sweep(covering);
  covering->add_option("--r0", cfg.r0, "disk radius (default: measured covering radius)");

  auto* cinterp = add("certify-interp", "separation certificate for interpolation");
  add_io(cinterp);
  add_alpha(cinterp);

  auto* csampling = add("certify-sampling", "covering certificate for sampling");
  add_io(csampling);
  add_alpha(csampling);
  csampling->add_option("--sigma", cfg.sigma, "covering disk radius")->required();
  csampling->add_option("--window", cfg.window, "side of the centered region to verify");
  csampling->add_option("--grid-step", cfg.grid_step, "scan step (default sigma/200, coarsened to keep about 4M samples)");

  auto* fgram = add("fock-gram", "normalized-kernel Gram matrix and its extreme eigenvalues");
  add_io(fgram);
  add_alpha(fgram);
  fgram->add_option("--tol", cfg.tol, "eigen residual tolerance (relative)");

  auto* finterp = add("fock-interp", "finite Fock-space interpolation");
  add_io(finterp);
  add_alpha(finterp);
  finterp->add_option("--targets", cfg.targets, "targets file, \"re,im\" per line (default: weighted delta)");

  auto* fsweep = add("fock-sweep", "Gram conditioning on hexagonal patches");
  add_alpha(fsweep);
  fsweep->add_option("--spacings", cfg.spacings, "comma-separated spacings")->delimiter(',');
  fsweep->add_option("--patch-radius", cfg.patch_radius, "patch radius in spacings")->capture_default_str();
  fsweep->add_option("--output", cfg.output, "JSON report path");
  fsweep->add_option("--csv", cfg.csv, "CSV table path");

  auto* thresholds = add("thresholds", "separation, covering and density thresholds for alpha");
  add_alpha(thresholds);
  thresholds->add_option("--output", cfg.output, "JSON report path");

  auto* replay = app.add_subcommand("replay", "re-run the configuration embedded in a report");
  replay->add_option("report", replay_path, "report JSON")->required();
  replay->add_option("--output", replay_output, "where to write the new report");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fockpack: " << e.what() << '\n';
    return kExitValidation;
  }

  if (replay->parsed()) {
    try {
      std::ifstream in(replay_path);
      require(static_cast<bool>(in), "cannot read report " + replay_path);
      const json report = json::parse(in);
      RunConfig again = config_from_json(report.at("config"));
      if (again.command == "lattice") {
        again.report = replay_output;
      } else {
        again.output = replay_output;
      }
      return run(again, out, err);
    } catch (const json::exception& e) {
      err << "fockpack replay: malformed report: " << e.what() << '\n';
      return kExitValidation;
    } catch (const InvalidInput& e) {
      err << "fockpack replay: " << e.what() << '\n';
      return kExitValidation;
    }
  }

  for (auto* sub : subs) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }
  if (p_text == "inf" || p_text == "infinity") {
    cfg.p = FockParams::p_infinity;
  } else {
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
    if (ec != std::errc{} || ptr != p_text.data() + p_text.size()) {
      err << "fockpack: --p must be a number or inf\n";
      return kExitValidation;
    }
    cfg.p = p;
  }
  return run(cfg, out, err);
}

}  // namespace fockpack::cli
