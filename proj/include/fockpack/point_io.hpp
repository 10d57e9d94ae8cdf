#pragma once

// Point-set files: CSV with one "x,y" pair per line, or a JSON array of
// [x, y] pairs. Readers reject NaN/Inf and duplicate points.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fockpack/geometry.hpp"

namespace fockpack {

enum class PointFormat { csv, json };

/// JSON for ".json" extensions, CSV otherwise.
PointFormat format_for_path(const std::filesystem::path& path);

PointSet read_points_csv(std::istream& in);
PointSet read_points_json(std::istream& in);
PointSet read_points(std::istream& in, PointFormat format);
PointSet read_points(const std::filesystem::path& path);

/// Coordinates are written with 17 significant digits so files round-trip.
void write_points_csv(std::ostream& out, const PointSet& ps);
void write_points_json(std::ostream& out, const PointSet& ps);
void write_points(std::ostream& out, const PointSet& ps, PointFormat format);
void write_points(const std::filesystem::path& path, const PointSet& ps);

}  // namespace fockpack
