#pragma once

// JSON forms of the library's result types. Field names are stable and
// match the struct members.

#include <nlohmann/json.hpp>

#include "fockpack/certify.hpp"
#include "fockpack/density.hpp"
#include "fockpack/fock.hpp"
#include "fockpack/geometry.hpp"
#include "fockpack/lattice.hpp"

namespace fockpack {

void to_json(nlohmann::json& j, const Point& p);
void to_json(nlohmann::json& j, const Region& r);
void to_json(nlohmann::json& j, const ZetaSweep& z);
void to_json(nlohmann::json& j, const DensityProfile& p);
void to_json(nlohmann::json& j, const DensityEstimate& e);
void to_json(nlohmann::json& j, const Certificate& c);
void to_json(nlohmann::json& j, const FockParams& p);
void to_json(nlohmann::json& j, const InterpolationSolution& s);
void to_json(nlohmann::json& j, const ConditioningRow& r);
void to_json(nlohmann::json& j, const CoveringCheck& c);

/// Complex numbers are written as [re, im].
nlohmann::json complex_to_json(Complex z);

/// Header "sigma,lambda_min,lambda_max,condition", full precision.
std::string conditioning_csv(const std::vector<ConditioningRow>& rows);

}  // namespace fockpack
