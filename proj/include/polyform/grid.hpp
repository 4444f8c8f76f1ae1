#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polyform/common.hpp"

namespace polyform {

struct cell {
  std::int64_t x = 0;  // grows right
  std::int64_t y = 0;  // grows up
  friend bool operator==(const cell&, const cell&) = default;
  friend auto operator<=>(const cell&, const cell&) = default;
};

inline cell step(cell c, direction d) {
  switch (d) {
    case direction::left: return {c.x - 1, c.y};
    case direction::right: return {c.x + 1, c.y};
    case direction::up: return {c.x, c.y + 1};
    case direction::down: return {c.x, c.y - 1};
  }
  return c;
}

enum class text_format : std::uint8_t { ascii = 0, coords = 1, composition = 2 };

struct classification {
  bool is_bar_graph = false;
  std::uint64_t height = 0;
  std::uint64_t width = 0;
};

/// Set of grid cells, normalized so the bounding box starts at (0,0).
/// Disconnected sets and holes are legal. This is the ground truth for
/// every query the compact structures answer.
class polyomino {
 public:
  static polyomino from_cells(std::vector<cell> cells) {
    if (cells.empty()) raise(errc::parse_error, "polyomino needs at least one cell");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    std::int64_t minx = cells[0].x, maxx = cells[0].x, miny = cells[0].y, maxy = cells[0].y;
    for (const auto& c : cells) {
      minx = std::min(minx, c.x);
      maxx = std::max(maxx, c.x);
      miny = std::min(miny, c.y);
      maxy = std::max(maxy, c.y);
    }
    polyomino p;
    p.width_ = static_cast<std::uint64_t>(maxx - minx + 1);
    p.height_ = static_cast<std::uint64_t>(maxy - miny + 1);
    p.cells_.reserve(cells.size());
    for (const auto& c : cells) p.cells_.push_back({c.x - minx, c.y - miny});
    p.grid_.assign(p.width_ * p.height_, false);
    for (const auto& c : p.cells_) p.grid_[p.slot(c)] = true;
    return p;
  }

  static polyomino parse(std::string_view text, text_format f) {
    switch (f) {
      case text_format::ascii: return parse_ascii(text);
      case text_format::coords: return parse_coords(text);
      case text_format::composition: return from_composition(parse_composition_line(text));
    }
    raise(errc::parse_error, "unknown format");
  }

  static std::vector<std::uint64_t> parse_composition_line(std::string_view text) {
    std::vector<std::uint64_t> bars;
    std::string token;
    std::istringstream in{std::string(text)};
    while (in >> token) {
      std::uint64_t v = 0;
      for (char ch : token) {
        if (ch < '0' || ch > '9') raise(errc::parse_error, "composition: not a positive integer");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      if (v == 0) raise(errc::parse_error, "composition: bar size must be positive");
      bars.push_back(v);
    }
    if (bars.empty()) raise(errc::parse_error, "composition: empty input");
    return bars;
  }

  static polyomino from_composition(const std::vector<std::uint64_t>& bars) {
    std::vector<cell> cells;
    for (std::size_t i = 0; i < bars.size(); ++i)
      for (std::uint64_t h = 0; h < bars[i]; ++h)
        cells.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(h)});
    return from_cells(std::move(cells));
  }

  std::string serialize(text_format f) const {
    switch (f) {
      case text_format::ascii: {
        std::string out;
        for (std::int64_t y = static_cast<std::int64_t>(height_) - 1; y >= 0; --y) {
          for (std::int64_t x = 0; x < static_cast<std::int64_t>(width_); ++x)
            out += has({x, y}) ? '#' : '.';
          out += '\n';
        }
        return out;
      }
      case text_format::coords: {
        std::string out;
        for (const auto& c : cells_)
          out += std::to_string(c.x) + " " + std::to_string(c.y) + "\n";
        return out;
      }
      case text_format::composition: {
        auto cls = classify();
        if (!cls.is_bar_graph) raise(errc::parse_error, "not a bar graph; no composition form");
        std::string out;
        for (auto b : composition()) {
          if (!out.empty()) out += ' ';
          out += std::to_string(b);
        }
        out += '\n';
        return out;
      }
    }
    raise(errc::parse_error, "unknown format");
  }

  std::uint64_t n() const { return cells_.size(); }
  std::uint64_t width() const { return width_; }
  std::uint64_t height() const { return height_; }
  const std::vector<cell>& cells() const { return cells_; }

  bool has(cell c) const {
    if (c.x < 0 || c.y < 0 || c.x >= static_cast<std::int64_t>(width_) ||
        c.y >= static_cast<std::int64_t>(height_))
      return false;
    return grid_[slot(c)];
  }

  std::optional<cell> neighbor(cell c, direction d) const {
    require_cell(c);
    cell t = step(c, d);
    if (has(t)) return t;
    return std::nullopt;
  }

  bool visible(cell a, cell b) const {
    require_cell(a);
    require_cell(b);
    if (a == b) return true;
    if (a.y == b.y) {
      auto [lo, hi] = std::minmax(a.x, b.x);
      for (std::int64_t x = lo + 1; x < hi; ++x)
        if (!has({x, a.y})) return false;
      return true;
    }
    if (a.x == b.x) {
      auto [lo, hi] = std::minmax(a.y, b.y);
      for (std::int64_t y = lo + 1; y < hi; ++y)
        if (!has({a.x, y})) return false;
      return true;
    }
    return false;
  }

  std::uint32_t degree(cell c) const {
    require_cell(c);
    std::uint32_t d = 0;
    for (auto dir : {direction::left, direction::right, direction::up, direction::down})
      if (has(step(c, dir))) ++d;
    return d;
  }

  bool adjacent(cell a, cell b) const {
    require_cell(a);
    require_cell(b);
    return std::llabs(a.x - b.x) + std::llabs(a.y - b.y) == 1;
  }

  classification classify() const {
    classification out{true, height_, width_};
    for (std::uint64_t x = 0; x < width_; ++x) {
      if (!has({static_cast<std::int64_t>(x), 0})) {
        out.is_bar_graph = false;
        break;
      }
      bool in_run = true;
      for (std::uint64_t y = 1; y < height_; ++y) {
        bool occ = has({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
        if (occ && !in_run) {
          out.is_bar_graph = false;
          return out;
        }
        in_run = occ;
      }
    }
    return out;
  }

  /// Bar sizes left to right; valid only for bar graphs.
  std::vector<std::uint64_t> composition() const {
    std::vector<std::uint64_t> bars(width_, 0);
    for (const auto& c : cells_) ++bars[static_cast<std::uint64_t>(c.x)];
    return bars;
  }

  bool connected() const {
    std::vector<bool> seen(width_ * height_, false);
    std::queue<cell> q;
    q.push(cells_[0]);
    seen[slot(cells_[0])] = true;
    std::uint64_t count = 1;
    while (!q.empty()) {
      cell c = q.front();
      q.pop();
      for (auto dir : {direction::left, direction::right, direction::up, direction::down}) {
        cell t = step(c, dir);
        if (has(t) && !seen[slot(t)]) {
          seen[slot(t)] = true;
          ++count;
          q.push(t);
        }
      }
    }
    return count == cells_.size();
  }

  polyomino rotated() const {
    std::vector<cell> cells;
    cells.reserve(cells_.size());
    for (const auto& c : cells_) cells.push_back({c.y, -c.x});
    return from_cells(std::move(cells));
  }

  /// Cells of row y (0-based, bottom up), left to right.
  std::vector<cell> row_cells(std::int64_t y) const {
    std::vector<cell> out;
    for (std::int64_t x = 0; x < static_cast<std::int64_t>(width_); ++x)
      if (has({x, y})) out.push_back({x, y});
    return out;
  }

 private:
  static polyomino parse_ascii(std::string_view text) {
    std::vector<std::string> rows;
    std::string row;
    for (char ch : text) {
      if (ch == '\r') continue;
      if (ch == '\n') {
        rows.push_back(row);
        row.clear();
      } else {
        row += ch;
      }
    }
    if (!row.empty()) rows.push_back(row);
    std::vector<cell> cells;
    std::int64_t nrows = static_cast<std::int64_t>(rows.size());
    for (std::int64_t r = 0; r < nrows; ++r) {
      for (std::size_t xcol = 0; xcol < rows[r].size(); ++xcol) {
        char ch = rows[r][xcol];
        if (ch == '#')
          cells.push_back({static_cast<std::int64_t>(xcol), nrows - 1 - r});
        else if (ch != '.')
          raise(errc::parse_error, "ascii: expected '#' or '.'");
      }
    }
    if (cells.empty()) raise(errc::parse_error, "ascii: no cells");
    return from_cells(std::move(cells));
  }

  static polyomino parse_coords(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<cell> cells;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::int64_t x, y;
      if (!(ls >> x >> y)) raise(errc::parse_error, "coords: expected two integers per line");
      std::string rest;
      if (ls >> rest) raise(errc::parse_error, "coords: trailing tokens");
      cells.push_back({x, y});
    }
    if (cells.empty()) raise(errc::parse_error, "coords: empty input");
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      raise(errc::duplicate_cell, "coords: duplicate cell");
    return from_cells(std::move(cells));
  }

  void require_cell(cell c) const {
    if (!has(c)) raise(errc::invalid_cell, "cell not in polyomino");
  }

  std::size_t slot(cell c) const {
    return static_cast<std::size_t>(c.y) * width_ + static_cast<std::size_t>(c.x);
  }

  std::uint64_t width_ = 0;
  std::uint64_t height_ = 0;
  std::vector<cell> cells_;   // sorted by (x, y)
  std::vector<bool> grid_;    // row-major over the bounding box
};

// --- seeded generators used by the fuzz harness and the benchmarks ---

inline polyomino random_connected(std::mt19937_64& rng, std::uint64_t n) {
  // cell-addition walk: attach a random empty neighbor of a random cell
  std::vector<cell> cells{{0, 0}};
  std::set<cell> used{{0, 0}};
  while (cells.size() < n) {
    cell base = cells[rng() % cells.size()];
    cell t = step(base, static_cast<direction>(rng() % 4));
    if (used.insert(t).second) cells.push_back(t);
  }
  return polyomino::from_cells(std::move(cells));
}

inline polyomino random_box(std::mt19937_64& rng, std::uint64_t w, std::uint64_t h, double fill) {
  std::bernoulli_distribution d(fill);
  std::vector<cell> cells;
  for (std::uint64_t y = 0; y < h; ++y)
    for (std::uint64_t x = 0; x < w; ++x)
      if (d(rng)) cells.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
  if (cells.empty()) cells.push_back({0, 0});
  return polyomino::from_cells(std::move(cells));
}

inline std::vector<std::uint64_t> random_composition(std::mt19937_64& rng, std::uint64_t n) {
  std::vector<std::uint64_t> bars;
  std::uint64_t left = n;
  while (left > 0) {
    std::uint64_t b = 1 + rng() % std::min<std::uint64_t>(left, 6);
    bars.push_back(b);
    left -= b;
  }
  return bars;
}

/// Staircase: vertical dominoes stepping up-right; needs a strip of height n/2.
inline polyomino staircase(std::uint64_t n) {
  std::vector<cell> cells;
  std::int64_t i = 0;
  while (cells.size() + 2 <= n) {
    cells.push_back({i, i});
    cells.push_back({i + 1, i});
    ++i;
  }
  if (cells.size() < n) cells.push_back({i, i});
  return polyomino::from_cells(std::move(cells));
}

/// Random polyomino confined to a strip of the given height.
inline polyomino random_strip(std::mt19937_64& rng, std::uint64_t n, std::uint64_t strip_height,
                              double fill = 0.55) {
  std::bernoulli_distribution d(fill);
  std::vector<cell> cells;
  std::uint64_t x = 0;
  while (cells.size() < n) {
    for (std::uint64_t y = 0; y < strip_height && cells.size() < n; ++y)
      if (d(rng)) cells.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)});
    ++x;
  }
  return polyomino::from_cells(std::move(cells));
}

}  // namespace polyform
