#pragma once

// Serializations of tiling grids:
//   prelpara 2D   count ':' cube (':' cube)*            count = cubes in the row
//   prelpara 3D   rows  ':' cube (':' cube)*            row-major, uniform width
//   cube          side ':' k (':' x ':' y){k}           spacer is "1:0"
// plus deterministic SVG drawings (flat rows and a three-face cube).

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "para/error.hpp"
#include "para/smnist.hpp"
#include "para/tiler.hpp"

namespace para {

struct Cube {
  std::uint32_t side = 1;
  std::vector<smnist::Dot> dots;

  bool is_spacer() const { return side == 1 && dots.empty(); }

  // Dot lists are sets: compare them order-independently.
  friend bool operator==(const Cube& a, const Cube& b) {
    if (a.side != b.side) return false;
    auto x = a.dots, y = b.dots;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  }
};

inline Cube cube_of(const Cell& c) {
  if (c.is_spacer()) return Cube{};
  const auto pat = smnist::pattern_of(c.code());
  return Cube{pat.side(), pat.dots()};
}

inline Cell cell_of(const Cube& cube) {
  if (cube.is_spacer()) return Cell::spacer();
  const auto code = smnist::code_of_pattern(smnist::Pattern(cube.side, cube.dots));
  if (code > std::numeric_limits<Code>::max()) throw Error(Error::Kind::Range, "SMNIST code exceeds 64 bits");
  return Cell::of(code.convert_to<Code>());
}

namespace detail {

inline void append_cube(std::string& out, const Cube& c) {
  out += ':';
  out += std::to_string(c.side);
  out += ':';
  out += std::to_string(c.dots.size());
  for (const auto& d : c.dots) {
    out += ':';
    out += std::to_string(d.x);
    out += ':';
    out += std::to_string(d.y);
  }
}

inline std::vector<std::uint64_t> split_numbers(std::string_view s) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (true) {
    const std::size_t j = s.find(':', i);
    const std::string_view tok = s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size()) {
      throw Error(Error::Kind::Syntax, "bad prelpara number '" + std::string(tok) + "'", i);
    }
    out.push_back(v);
    if (j == std::string_view::npos) break;
    i = j + 1;
  }
  return out;
}

inline Cube read_cube(const std::vector<std::uint64_t>& nums, std::size_t& i) {
  if (i + 2 > nums.size()) throw Error(Error::Kind::Format, "truncated prelpara string: cube header missing");
  const std::uint64_t side = nums[i++];
  const std::uint64_t k = nums[i++];
  if (side == 0 || side > 1024) throw Error(Error::Kind::Range, "bad cube size " + std::to_string(side));
  if (side == 1) {
    if (k != 0) throw Error(Error::Kind::Format, "size-1 cubes are spacers and carry no dots");
    return Cube{};
  }
  if (k == 0 || k >= side * side) throw Error(Error::Kind::Range, "bad dot count " + std::to_string(k));
  if (i + 2 * k > nums.size()) throw Error(Error::Kind::Format, "truncated prelpara string: coordinates missing");
  Cube c{static_cast<std::uint32_t>(side), {}};
  for (std::uint64_t d = 0; d < k; ++d) {
    const std::uint64_t x = nums[i++];
    const std::uint64_t y = nums[i++];
    if (x >= side || y >= side) throw Error(Error::Kind::Range, "coordinate outside the cube");
    c.dots.push_back({static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)});
  }
  return c;
}

inline std::vector<Cube> read_cubes(const std::vector<std::uint64_t>& nums, std::size_t& i) {
  std::vector<Cube> out;
  while (i < nums.size()) out.push_back(read_cube(nums, i));
  return out;
}

}  // namespace detail

inline std::string to_prelpara_2d(const std::vector<Cell>& row) {
  if (row.empty()) throw Error(Error::Kind::Invalid, "cannot serialize an empty row");
  std::string out = std::to_string(row.size());
  for (const auto& c : row) detail::append_cube(out, cube_of(c));
  return out;
}

inline std::vector<Cube> parse_prelpara(std::string_view s) {
  const auto nums = detail::split_numbers(s);
  const std::uint64_t count = nums.front();
  if (count == 0) throw Error(Error::Kind::Format, "a row holds at least one cube");
  std::size_t i = 1;
  std::vector<Cube> out;
  for (std::uint64_t n = 0; n < count; ++n) out.push_back(detail::read_cube(nums, i));
  if (i != nums.size()) throw Error(Error::Kind::Format, "cube count mismatch: trailing data after declared cubes");
  return out;
}

// Rows truncated or spacer-padded to `cubes_per_row` (default: longest row).
inline std::vector<std::vector<Cell>> uniform_rows(const TilingGrid& g, std::optional<std::size_t> cubes_per_row) {
  if (cubes_per_row && *cubes_per_row < 1) throw Error(Error::Kind::Range, "cubes_per_row must be >= 1");
  std::size_t width = 0;
  if (cubes_per_row) {
    width = *cubes_per_row;
  } else {
    for (const auto& r : g.rows) width = std::max(width, r.size());
  }
  std::vector<std::vector<Cell>> rows;
  for (const auto& r : g.rows) {
    std::vector<Cell> row(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(std::min(width, r.size())));
    row.resize(width, Cell::spacer());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string to_prelpara_3d(const TilingGrid& g, std::optional<std::size_t> cubes_per_row = std::nullopt) {
  if (g.rows.empty()) throw Error(Error::Kind::Invalid, "cannot serialize an empty grid");
  const auto rows = uniform_rows(g, cubes_per_row);
  std::string out = std::to_string(rows.size());
  for (const auto& r : rows) {
    for (const auto& c : r) detail::append_cube(out, cube_of(c));
  }
  return out;
}

inline std::vector<std::vector<Cube>> parse_prelpara_3d(std::string_view s) {
  const auto nums = detail::split_numbers(s);
  const std::uint64_t rows = nums.front();
  if (rows == 0) throw Error(Error::Kind::Format, "a 3D string holds at least one row");
  std::size_t i = 1;
  auto cubes = detail::read_cubes(nums, i);
  if (cubes.size() % rows != 0) throw Error(Error::Kind::Format, "cube count is not a multiple of the row count");
  const std::size_t width = cubes.size() / rows;
  std::vector<std::vector<Cube>> out(rows);
  for (std::size_t c = 0; c < cubes.size(); ++c) out[c / width].push_back(std::move(cubes[c]));
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// One cube drawn into the square [x, x+size] x [y, y+size], y growing upward
// inside the cube.
inline void svg_cube(std::ostringstream& os, const Cell& cell, double x, double y, double size) {
  if (cell.is_spacer()) {
    os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(size) << "\" height=\"" << num(size)
       << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    return;
  }
  const Cube cube = cube_of(cell);
  const double px = size / cube.side;
  os << "<g class=\"cube\" data-code=\"" << cell.code() << "\">\n";
  for (std::uint32_t gy = 0; gy < cube.side; ++gy) {
    for (std::uint32_t gx = 0; gx < cube.side; ++gx) {
      os << "<rect x=\"" << num(x + gx * px) << "\" y=\"" << num(y + gy * px) << "\" width=\"" << num(px)
         << "\" height=\"" << num(px) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    }
  }
  for (const auto& d : cube.dots) {
    const double cx = x + (d.x + 0.5) * px;
    const double cy = y + size - (d.y + 0.5) * px;
    os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(0.3 * px)
       << "\" fill=\"#000000\"/>\n";
  }
  os << "</g>\n";
}

inline const char* svg_header() { return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

}  // namespace detail

inline std::string to_svg_2d(const TilingGrid& g, int cell_px = 32) {
  if (cell_px < 8) throw Error(Error::Kind::Range, "cell_px must be >= 8");
  std::size_t width = 0;
  for (const auto& r : g.rows) width = std::max(width, r.size());
  const double w = static_cast<double>(width * cell_px);
  const double h = static_cast<double>(g.rows.size() * cell_px);
  std::ostringstream os;
  os << detail::svg_header();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::num(w) << "\" height=\""
     << detail::num(h) << "\" viewBox=\"0 0 " << detail::num(w) << " " << detail::num(h) << "\">\n";
  for (std::size_t r = 0; r < g.rows.size(); ++r) {
    os << "<g class=\"row\" data-row=\"" << r << "\">\n";
    for (std::size_t c = 0; c < g.rows[r].size(); ++c) {
      detail::svg_cube(os, g.rows[r][c], static_cast<double>(c * cell_px), static_cast<double>(r * cell_px),
                       static_cast<double>(cell_px));
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Up to three rows on the front, top and right faces of a slanted cube. Each
// face is a square of side width*cell_px with its row along the middle.
inline std::string to_svg_3d(const TilingGrid& g, int cell_px = 32,
                             std::optional<std::size_t> cubes_per_row = std::nullopt) {
  constexpr std::size_t kFaces = 3;
  if (cell_px < 8) throw Error(Error::Kind::Range, "cell_px must be >= 8");
  if (g.rows.empty()) throw Error(Error::Kind::Invalid, "cannot draw an empty grid");
  if (g.rows.size() > kFaces) {
    throw Error(Error::Kind::Range, "a cube has 3 faces, grid has " + std::to_string(g.rows.size()) + " rows");
  }
  const auto rows = uniform_rows(g, cubes_per_row);
  const double side = static_cast<double>(rows.front().size() * cell_px);
  const double depth = side / 2;
  const double margin = 4;
  const double w = side + depth + 2 * margin;
  const double h = side + depth + 2 * margin;

  // Affine maps of the face-local square [0,side]^2 (y down) onto the cube.
  const std::string transforms[kFaces] = {
      "matrix(1 0 0 1 " + detail::num(margin) + " " + detail::num(margin + depth) + ")",
      "matrix(1 0 -0.5 0.5 " + detail::num(margin + depth) + " " + detail::num(margin) + ")",
      "matrix(0.5 -0.5 0 1 " + detail::num(margin + side) + " " + detail::num(margin + depth) + ")",
  };
  const char* names[kFaces] = {"front", "top", "right"};

  std::ostringstream os;
  os << detail::svg_header();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << detail::num(w) << "\" height=\""
     << detail::num(h) << "\" viewBox=\"0 0 " << detail::num(w) << " " << detail::num(h) << "\">\n";
  for (std::size_t f = 0; f < rows.size(); ++f) {
    os << "<g class=\"face\" data-face=\"" << names[f] << "\" transform=\"" << transforms[f] << "\">\n";
    os << "<rect x=\"0.00\" y=\"0.00\" width=\"" << detail::num(side) << "\" height=\"" << detail::num(side)
       << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    const double y = (side - cell_px) / 2;
    for (std::size_t c = 0; c < rows[f].size(); ++c) {
      detail::svg_cube(os, rows[f][c], static_cast<double>(c * cell_px), y, static_cast<double>(cell_px));
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace para
