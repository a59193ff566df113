#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mapf {

/// Thrown by the map/scen parsers. Carries 1-based line and column numbers.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int col = 0)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           (col > 0 ? ", column " + std::to_string(col) : std::string()) +
                           ": " + msg),
        line(line),
        col(col) {}

  int line;
  int col;
};

struct Vertex {
  int row = 0;
  int col = 0;

  friend bool operator==(const Vertex& a, const Vertex& b) {
    return a.row == b.row && a.col == b.col;
  }
  friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
  friend bool operator<(const Vertex& a, const Vertex& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  }
};

/// 4-connected grid with a passable mask. Cells are addressed either by
/// (row, col) or by a flat row-major index.
class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, std::vector<uint8_t> passable, std::string name = "")
      : width_(width), height_(height), passable_(std::move(passable)), name_(std::move(name)) {
    if (width_ <= 0 || height_ <= 0)
      throw std::invalid_argument("grid dimensions must be positive");
    if (static_cast<int>(passable_.size()) != width_ * height_)
      throw std::invalid_argument("passable mask size does not match dimensions");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }
  const std::string& name() const { return name_; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < height_ && col >= 0 && col < width_;
  }
  bool in_bounds(Vertex v) const { return in_bounds(v.row, v.col); }

  int index(int row, int col) const { return row * width_ + col; }
  int index(Vertex v) const { return index(v.row, v.col); }
  Vertex vertex(int cell) const { return Vertex{cell / width_, cell % width_}; }

  bool passable(int cell) const { return passable_[cell] != 0; }
  bool passable(Vertex v) const { return in_bounds(v) && passable(index(v)); }

  int passable_count() const {
    int n = 0;
    for (uint8_t p : passable_) n += p != 0;
    return n;
  }

  std::vector<int> passable_cells() const {
    std::vector<int> cells;
    cells.reserve(passable_.size());
    for (int c = 0; c < num_cells(); ++c)
      if (passable_[c]) cells.push_back(c);
    return cells;
  }

  /// Passable 4-connected neighbors in fixed (up, down, left, right) order.
  std::vector<Vertex> neighbors(Vertex v) const {
    if (!passable(v)) throw std::invalid_argument("neighbors: vertex out of bounds or impassable");
    std::vector<Vertex> out;
    out.reserve(4);
    const Vertex cand[4] = {{v.row - 1, v.col}, {v.row + 1, v.col},
                            {v.row, v.col - 1}, {v.row, v.col + 1}};
    for (const Vertex& n : cand)
      if (passable(n)) out.push_back(n);
    return out;
  }

  /// Hot-path neighbor iteration over flat cell indices, same order as neighbors().
  template <typename Fn>
  void for_each_neighbor(int cell, Fn&& fn) const {
    const int r = cell / width_;
    const int c = cell % width_;
    if (r > 0 && passable_[cell - width_]) fn(cell - width_);
    if (r + 1 < height_ && passable_[cell + width_]) fn(cell + width_);
    if (c > 0 && passable_[cell - 1]) fn(cell - 1);
    if (c + 1 < width_ && passable_[cell + 1]) fn(cell + 1);
  }

  static bool adjacent(Vertex a, Vertex b) {
    const int dr = a.row - b.row;
    const int dc = a.col - b.col;
    return (dr == 0 && (dc == 1 || dc == -1)) || (dc == 0 && (dr == 1 || dr == -1));
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> passable_;
  std::string name_;
};

/// Boolean mask over grid cells, used for residual-graph vertex removal.
class CellMask {
 public:
  CellMask() = default;
  explicit CellMask(int num_cells) : bits_(num_cells, 0) {}

  void set(int cell) { bits_[cell] = 1; }
  void clear(int cell) { bits_[cell] = 0; }
  bool test(int cell) const { return !bits_.empty() && bits_[cell] != 0; }
  bool empty() const { return bits_.empty(); }
  int size() const { return static_cast<int>(bits_.size()); }

 private:
  std::vector<uint8_t> bits_;
};

namespace detail {

inline std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

// Splits into lines; keeps empty lines so line numbers stay meaningful.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(trim_cr(text.substr(pos)));
      break;
    }
    lines.push_back(trim_cr(text.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

inline int parse_header_int(std::string_view line, std::string_view key, int line_no) {
  if (line.substr(0, key.size()) != key || line.size() <= key.size() || line[key.size()] != ' ')
    throw ParseError("expected \"" + std::string(key) + " <n>\", got \"" + std::string(line) + "\"",
                     line_no);
  std::string_view num = line.substr(key.size() + 1);
  int value = 0;
  bool any = false;
  for (char ch : num) {
    if (ch < '0' || ch > '9')
      throw ParseError("invalid integer in \"" + std::string(key) + "\" header", line_no);
    value = value * 10 + (ch - '0');
    any = true;
  }
  if (!any || value <= 0)
    throw ParseError(std::string(key) + " must be a positive integer", line_no);
  return value;
}

}  // namespace detail

inline bool terrain_passable(char ch) { return ch == '.' || ch == 'G' || ch == 'S'; }
inline bool terrain_impassable(char ch) {
  return ch == '@' || ch == 'O' || ch == 'T' || ch == 'W';
}

/// Parses the benchmark grid format:
///   type octile / height H / width W / map / <H rows of W terrain chars>
/// Terrain '.', 'G', 'S' are passable; '@', 'O', 'T', 'W' are not.
inline GridMap parse_map(std::string_view text, std::string name = "") {
  auto lines = detail::split_lines(text);
  if (lines.size() < 4) throw ParseError("map header requires 4 lines", 1);
  if (lines[0].substr(0, 4) != "type")
    throw ParseError("expected \"type ...\" header, got \"" + std::string(lines[0]) + "\"", 1);
  const int height = detail::parse_header_int(lines[1], "height", 2);
  const int width = detail::parse_header_int(lines[2], "width", 3);
  if (lines[3] != "map")
    throw ParseError("expected \"map\" separator, got \"" + std::string(lines[3]) + "\"", 4);

  if (static_cast<int>(lines.size()) - 4 < height)
    throw ParseError("grid body has " + std::to_string(lines.size() - 4) +
                         " rows, header declares " + std::to_string(height),
                     static_cast<int>(lines.size()));
  if (static_cast<int>(lines.size()) - 4 > height)
    throw ParseError("grid body has more rows than the declared height", 4 + height + 1);

  std::vector<uint8_t> passable(static_cast<size_t>(width) * height, 0);
  for (int r = 0; r < height; ++r) {
    std::string_view row = lines[4 + r];
    const int line_no = 5 + r;
    if (static_cast<int>(row.size()) != width)
      throw ParseError("row has " + std::to_string(row.size()) + " cells, header declares width " +
                           std::to_string(width),
                       line_no, static_cast<int>(row.size()) + 1);
    for (int c = 0; c < width; ++c) {
      const char ch = row[c];
      if (terrain_passable(ch)) {
        passable[static_cast<size_t>(r) * width + c] = 1;
      } else if (!terrain_impassable(ch)) {
        throw ParseError(std::string("unknown terrain character '") + ch + "'", line_no, c + 1);
      }
    }
  }
  return GridMap(width, height, std::move(passable), std::move(name));
}

/// Canonical text form; passability round-trips through parse_map exactly.
inline std::string serialize_map(const GridMap& map) {
  std::string out = "type octile\nheight " + std::to_string(map.height()) + "\nwidth " +
                    std::to_string(map.width()) + "\nmap\n";
  out.reserve(out.size() + static_cast<size_t>(map.height()) * (map.width() + 1));
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) out += map.passable(map.index(r, c)) ? '.' : '@';
    out += '\n';
  }
  return out;
}

}  // namespace mapf
