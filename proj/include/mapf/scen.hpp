#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

/// One line of a benchmark scenario file. Coordinates in the file are
/// (x = column, y = row); internally we keep row/col vertices.
struct ScenEntry {
  int bucket = 0;
  std::string map_name;
  int map_width = 0;
  int map_height = 0;
  Vertex start;
  Vertex goal;
  double optimal_length = 0.0;
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

inline long parse_long(std::string_view s, int line_no, const char* what) {
  if (s.empty()) throw ParseError(std::string("empty ") + what + " field", line_no);
  long value = 0;
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-') {
    neg = true;
    i = 1;
    if (s.size() == 1) throw ParseError(std::string("invalid ") + what + " field", line_no);
  }
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw ParseError(std::string("invalid ") + what + " field \"" + std::string(s) + "\"",
                       line_no);
    value = value * 10 + (s[i] - '0');
  }
  return neg ? -value : value;
}

inline double parse_double(std::string_view s, int line_no, const char* what) {
  try {
    size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("invalid ") + what + " field \"" + std::string(s) + "\"", line_no);
  }
}

}  // namespace detail

/// Parses a scenario file: a "version <n>" line followed by 9 tab-separated
/// fields per entry (bucket, map, width, height, sx, sy, gx, gy, length).
inline std::vector<ScenEntry> parse_scen(std::string_view text) {
  auto lines = detail::split_lines(text);
  if (lines.empty() || lines[0].substr(0, 7) != "version")
    throw ParseError("expected \"version <n>\" header", 1);

  std::vector<ScenEntry> entries;
  for (size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = lines[i];
    if (line.empty()) continue;
    auto fields = detail::split_tabs(line);
    if (fields.size() != 9)
      throw ParseError("expected 9 tab-separated fields, got " + std::to_string(fields.size()),
                       line_no);
    ScenEntry e;
    e.bucket = static_cast<int>(detail::parse_long(fields[0], line_no, "bucket"));
    e.map_name = std::string(fields[1]);
    e.map_width = static_cast<int>(detail::parse_long(fields[2], line_no, "map width"));
    e.map_height = static_cast<int>(detail::parse_long(fields[3], line_no, "map height"));
    const int sx = static_cast<int>(detail::parse_long(fields[4], line_no, "start x"));
    const int sy = static_cast<int>(detail::parse_long(fields[5], line_no, "start y"));
    const int gx = static_cast<int>(detail::parse_long(fields[6], line_no, "goal x"));
    const int gy = static_cast<int>(detail::parse_long(fields[7], line_no, "goal y"));
    e.start = Vertex{sy, sx};
    e.goal = Vertex{gy, gx};
    e.optimal_length = detail::parse_double(fields[8], line_no, "optimal length");
    if (sx < 0 || sx >= e.map_width || sy < 0 || sy >= e.map_height)
      throw ParseError("start outside declared map dimensions", line_no);
    if (gx < 0 || gx >= e.map_width || gy < 0 || gy >= e.map_height)
      throw ParseError("goal outside declared map dimensions", line_no);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::string serialize_scen(const std::vector<ScenEntry>& entries) {
  std::string out = "version 1\n";
  char buf[64];
  for (const ScenEntry& e : entries) {
    out += std::to_string(e.bucket);
    out += '\t';
    out += e.map_name;
    out += '\t';
    out += std::to_string(e.map_width);
    out += '\t';
    out += std::to_string(e.map_height);
    out += '\t';
    out += std::to_string(e.start.col);
    out += '\t';
    out += std::to_string(e.start.row);
    out += '\t';
    out += std::to_string(e.goal.col);
    out += '\t';
    out += std::to_string(e.goal.row);
    out += '\t';
    std::snprintf(buf, sizeof(buf), "%.8g", e.optimal_length);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace mapf
