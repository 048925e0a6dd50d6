#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gerrycircle/compactness.hpp"
#include "gerrycircle/splitline.hpp"

namespace gerrycircle {

/// Header `x,y,pos,neg`, one weighted point per row. Errors name the line.
std::vector<WeightedPoint> parse_points_csv(std::istream& in, const std::string& source = "<input>");
std::vector<WeightedPoint> read_points_csv(const std::filesystem::path& path);

/// JSON array of [x, y] pairs, or an object with a "ring" member holding one.
Polygon parse_polygon_json(std::string_view text, const std::string& source = "<input>");
Polygon read_polygon_json(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest decimal with 12 significant digits ("%.12g").
std::string format_number(double value);
/// Value rounded to 12 significant digits, for JSON emission.
double round_sig12(double value);

/// 64-bit FNV-1a digest rendered as 16 hex digits.
std::string fnv1a64_hex(std::string_view data);

}  // namespace gerrycircle
