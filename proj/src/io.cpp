#include "gerrycircle/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

#include "gerrycircle/common.hpp"

namespace gerrycircle {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  if (text.empty()) throw ValidationError(where + ": empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(value))
    throw ValidationError(where + ": not a finite number: '" + text + "'");
  return value;
}

}  // namespace

std::vector<WeightedPoint> parse_points_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<WeightedPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    const auto fields = split_fields(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"x", "y", "pos", "neg"})
        throw ValidationError(where + ": expected header 'x,y,pos,neg'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4)
      throw ValidationError(where + ": expected 4 fields, found " + std::to_string(fields.size()));
    WeightedPoint p{parse_double(fields[0], where), parse_double(fields[1], where), parse_double(fields[2], where),
                    parse_double(fields[3], where)};
    if (p.pos < 0 || p.neg < 0) throw ValidationError(where + ": vote weights must be nonnegative");
    if (p.population() <= 0) throw ValidationError(where + ": pos + neg must be positive");
    points.push_back(p);
  }
  if (!header_seen) throw ValidationError(source + ": empty points file");
  if (points.empty()) throw ValidationError(source + ": no data rows");
  return points;
}

std::vector<WeightedPoint> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open points file " + path.string());
  return parse_points_csv(in, path.string());
}

Polygon parse_polygon_json(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto ? upto - 1 : 0), '\n');
    throw ValidationError(source + ":" + std::to_string(line) + ": invalid JSON");
  }
  const nlohmann::json& ring = doc.is_object() && doc.contains("ring") ? doc["ring"] : doc;
  if (!ring.is_array()) throw ValidationError(source + ": expected an array of [x, y] pairs");
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& pair = ring[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ValidationError(source + ": ring entry " + std::to_string(i) + " is not an [x, y] pair");
    vertices.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  if (vertices.size() > 1 && vertices.front() == vertices.back()) vertices.pop_back();
  try {
    return Polygon(std::move(vertices));
  } catch (const ValidationError& e) {
    throw ValidationError(source + ": " + e.what());
  }
}

Polygon read_polygon_json(const std::filesystem::path& path) { return parse_polygon_json(read_file(path), path.string()); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

double round_sig12(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string fnv1a64_hex(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace gerrycircle
