#include "fockpack/json.hpp"

#include <cmath>
#include <sstream>

namespace fockpack {

namespace {

// JSON has no infinity; p = inf and unbounded condition numbers become the
// string "inf".
nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

void to_json(nlohmann::json& j, const Point& p) { j = nlohmann::json::array({p.x, p.y}); }

void to_json(nlohmann::json& j, const Region& r) {
  j = {{"xmin", r.xmin}, {"xmax", r.xmax}, {"ymin", r.ymin}, {"ymax", r.ymax}};
}

void to_json(nlohmann::json& j, const ZetaSweep& z) {
  j = {{"region", z.region}, {"step", z.step}, {"samples", z.samples}};
}

void to_json(nlohmann::json& j, const DensityProfile& p) {
  j = {{"radii", p.radii},
       {"sup_ratio", p.sup_ratio},
       {"inf_ratio", p.inf_ratio},
       {"zeta_sweep", p.zeta_sweep}};
}

void to_json(nlohmann::json& j, const DensityEstimate& e) {
  j = {{"value", e.value},
       {"raw_at_rmax", e.raw_at_rmax},
       {"fit_residual", e.fit_residual},
       {"kind", to_string(e.kind)}};
}

void to_json(nlohmann::json& j, const Certificate& c) {
  j = {{"verdict", to_string(c.verdict)},
       {"route", to_string(c.route)},
       {"sigma", c.sigma},
       {"bound", c.bound},
       {"critical", c.critical},
       {"margin", c.margin},
       {"notes", c.notes}};
}

void to_json(nlohmann::json& j, const FockParams& p) {
  j = {{"alpha", p.alpha}, {"p", number(p.p)}};
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

void to_json(nlohmann::json& j, const InterpolationSolution& s) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : s.coefficients) coeffs.push_back(complex_to_json(c));
  j = {{"coefficients", coeffs},
       {"residual_inf", s.residual_inf},
       {"lambda_min", s.lambda_min},
       {"lambda_max", s.lambda_max},
       {"condition", number(s.condition)},
       {"coeff_norm", s.coeff_norm}};
}

void to_json(nlohmann::json& j, const ConditioningRow& r) {
  j = {{"sigma", r.sigma},
       {"lambda_min", r.lambda_min},
       {"lambda_max", r.lambda_max},
       {"condition", number(r.condition)}};
}

void to_json(nlohmann::json& j, const CoveringCheck& c) {
  j = {{"covered", c.covered}, {"covering_radius", c.covering_radius}, {"margin", c.margin}};
  j["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json(nullptr);
}

std::string conditioning_csv(const std::vector<ConditioningRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "sigma,lambda_min,lambda_max,condition\n";
  for (const auto& r : rows) {
    os << r.sigma << ',' << r.lambda_min << ',' << r.lambda_max << ',' << r.condition << '\n';
  }
  return os.str();
}

}  // namespace fockpack
