#pragma once

// Generators for hexagonal and square lattices and controlled perturbations
// of point sets.

#include <cstdint>
#include <string>

#include "fockpack/geometry.hpp"

namespace fockpack {

enum class LatticeKind { hexagonal, square };

std::string to_string(LatticeKind kind);
/// Accepts "hex", "hexagonal", "square". Throws InvalidInput otherwise.
LatticeKind parse_lattice_kind(const std::string& text);

struct LatticeSpec {
  LatticeKind kind = LatticeKind::hexagonal;
  double spacing = 1.0;  // nearest-neighbor distance
  Point offset{};
  double rotation = 0.0;  // radians, about `offset`

  void validate() const;
};

/// Points per unit area of the lattice: 2/(sqrt(3) s^2) or 1/s^2.
double lattice_density(const LatticeSpec& spec);

/// All points a*v1 + b*v2 + offset inside the closed region, where
/// v1 = s(1, 0) and v2 = s(1/2, sqrt(3)/2) (hexagonal) or s(0, 1) (square),
/// both rotated by spec.rotation. Order: b outer, a inner, ascending.
PointSet generate(const LatticeSpec& spec, const Region& region);

/// Lattice points within `radius_in_spacings * spacing` of the offset
/// (inclusive). Radius 4 on a hexagonal lattice gives the 61-point patch.
PointSet lattice_patch(const LatticeSpec& spec, double radius_in_spacings);

/// Displace every point by an independent uniform vector in the disk of
/// radius `magnitude`. Deterministic in `seed`; on a duplicate collision the
/// draw is repeated with a derived sub-seed, up to 100 attempts.
PointSet perturb(const PointSet& ps, double magnitude, std::uint64_t seed);

/// Random sequential adsorption: `attempts` uniform candidates in `region`,
/// each kept only if it is at least `sigma` from every kept point.
PointSet random_separated(const Region& region, double sigma, std::size_t attempts,
                          std::uint64_t seed);

}  // namespace fockpack
