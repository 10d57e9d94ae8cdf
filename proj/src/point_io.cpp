#include "fockpack/point_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fockpack/errors.hpp"

namespace fockpack {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && !text.empty();
}

void check_finite(Point p, const std::string& where) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw InvalidInput(where + ": NaN/Inf coordinates are not allowed");
  }
}

}  // namespace

PointFormat format_for_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".json" ? PointFormat::json : PointFormat::csv;
}

PointSet read_points_csv(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    const std::string where = "CSV line " + std::to_string(lineno);
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
      throw InvalidInput(where + ": expected exactly two fields \"x,y\"");
    }
    Point p;
    const bool ok = parse_double(body.substr(0, comma), p.x) &&
                    parse_double(body.substr(comma + 1), p.y);
    if (!ok) {
      if (!seen_content && trim(body.substr(0, comma)) == "x" && trim(body.substr(comma + 1)) == "y") {
        seen_content = true;  // header row
        continue;
      }
      throw InvalidInput(where + ": malformed number in \"" + std::string(body) + "\"");
    }
    seen_content = true;
    check_finite(p, where);
    pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

PointSet read_points_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON point set: ") + e.what());
  }
  if (!doc.is_array()) {
    throw InvalidInput("JSON point set must be an array of [x, y] pairs");
  }
  std::vector<Point> pts;
  pts.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "JSON element " + std::to_string(i);
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw InvalidInput(where + ": expected [x, y] with numeric entries");
    }
    Point p{item[0].get<double>(), item[1].get<double>()};
    check_finite(p, where);
    pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

PointSet read_points(std::istream& in, PointFormat format) {
  return format == PointFormat::json ? read_points_json(in) : read_points_csv(in);
}

PointSet read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot read point file " + path.string());
  }
  return read_points(in, format_for_path(path));
}

void write_points_csv(std::ostream& out, const PointSet& ps) {
  const auto old = out.precision(17);
  for (const auto& p : ps) {
    out << p.x << ',' << p.y << '\n';
  }
  out.precision(old);
}

void write_points_json(std::ostream& out, const PointSet& ps) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : ps) doc.push_back({p.x, p.y});
  out << doc.dump() << '\n';
}

void write_points(std::ostream& out, const PointSet& ps, PointFormat format) {
  if (format == PointFormat::json) {
    write_points_json(out, ps);
  } else {
    write_points_csv(out, ps);
  }
}

void write_points(const std::filesystem::path& path, const PointSet& ps) {
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write point file " + path.string());
  }
  write_points(out, ps, format_for_path(path));
}

}  // namespace fockpack
