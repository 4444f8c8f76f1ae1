#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "polyform/bitvector.hpp"
#include "polyform/common.hpp"
#include "polyform/tree.hpp"

namespace polyform {

/// Precomputed answers for every bar graph of size k: pairwise visibility
/// over the canonical cell order plus the smallest bar size among all bars
/// except the last. Entries are addressed by the k-1 shape bits that follow
/// the (always set) first bit.
class lookup_table {
 public:
  static lookup_table build(std::uint32_t k) {
    if (k < 1 || k > 16) raise(errc::invalid_k, "lookup table supports k in [1, 16]");
    lookup_table t;
    t.k_ = k;
    t.pair_words_ = (k * (k - 1) / 2 + 63) / 64;
    std::uint64_t entries = std::uint64_t{1} << (k - 1);
    t.vis_.assign(entries * std::max<std::uint64_t>(t.pair_words_, 1), 0);
    t.min_except_last_.assign(entries, 0xFF);
    std::vector<std::uint32_t> bar_id(k + 1), height(k + 1);
    for (std::uint64_t code = 0; code < entries; ++code) {
      std::vector<std::uint32_t> sizes = decode_composition(code, k);
      std::uint32_t b = 0;
      std::uint32_t pos = 1;
      for (std::uint32_t s = 0; s < sizes.size(); ++s)
        for (std::uint32_t h = 0; h < sizes[s]; ++h, ++pos) {
          bar_id[pos] = s;
          height[pos] = h;
        }
      for (std::uint32_t u = 1; u <= k; ++u)
        for (std::uint32_t v = u + 1; v <= k; ++v) {
          bool vis;
          if (bar_id[u] == bar_id[v]) {
            vis = true;
          } else if (height[u] != height[v]) {
            vis = false;
          } else {
            vis = true;
            for (std::uint32_t s = bar_id[u] + 1; s < bar_id[v]; ++s)
              if (sizes[s] < height[u] + 1) {
                vis = false;
                break;
              }
          }
          if (vis) {
            std::uint64_t idx = pair_index(u, v, k);
            t.vis_[code * t.pair_words_ + idx / 64] |= std::uint64_t{1} << (idx % 64);
          }
        }
      if (sizes.size() > 1) {
        std::uint32_t mn = sizes[0];
        for (std::uint32_t s = 1; s + 1 < sizes.size(); ++s) mn = std::min(mn, sizes[s]);
        t.min_except_last_[code] = static_cast<std::uint8_t>(mn);
      }
      (void)b;
    }
    return t;
  }

  std::uint32_t k() const { return k_; }
  std::uint64_t entry_count() const { return std::uint64_t{1} << (k_ - 1); }

  /// Visibility of canonical cells u, v (1-based) in the entry's bar graph.
  bool vis(std::uint64_t code, std::uint32_t u, std::uint32_t v) const {
    if (u == v) return true;
    if (u > v) std::swap(u, v);
    std::uint64_t idx = pair_index(u, v, k_);
    return (vis_[code * pair_words_ + idx / 64] >> (idx % 64)) & 1;
  }

  /// Smallest bar size among all bars except the last; nullopt for a
  /// single-bar entry (no constraint).
  std::optional<std::uint32_t> min_except_last(std::uint64_t code) const {
    std::uint8_t v = min_except_last_[code];
    if (v == 0xFF) return std::nullopt;
    return v;
  }

  static std::vector<std::uint32_t> decode_composition(std::uint64_t code, std::uint32_t k) {
    std::vector<std::uint32_t> sizes;
    for (std::uint32_t pos = 1; pos <= k; ++pos) {
      bool starts = (pos == 1) || ((code >> (pos - 2)) & 1);
      if (starts) sizes.push_back(1);
      else ++sizes.back();
    }
    return sizes;
  }

  /// Reported size: entries x (C(k,2) + ceil(log2 k)) bits.
  std::uint64_t table_bits() const {
    std::uint32_t logk = 0;
    while ((1u << logk) < k_) ++logk;
    return entry_count() * (std::uint64_t{k_} * (k_ - 1) / 2 + logk);
  }

 private:
  static std::uint64_t pair_index(std::uint32_t u, std::uint32_t v, std::uint32_t k) {
    std::uint64_t offset = std::uint64_t{u - 1} * k - std::uint64_t{u} * (u - 1) / 2;
    return offset + (v - u - 1);
  }

  std::uint32_t k_ = 1;
  std::uint64_t pair_words_ = 1;
  std::vector<std::uint64_t> vis_;
  std::vector<std::uint8_t> min_except_last_;
};

struct bars_vis_trace {
  std::uint64_t block1 = 0, block2 = 0;
  std::uint64_t lca_block = 0;  // 0 when the interior test was skipped
  std::uint64_t lo = 0;
  bool used_interior = false;
  bool result = false;
};

/// Succinct bar-graph store: S_G marks each bar's lowest cell over the
/// canonical order, B_G (sparse) marks block starts, R_k answers in-block
/// visibility, and the Cartesian tree over per-block minimum bar sizes
/// answers the cross-block range minimum through lca. Cells are canonical
/// indices in [1, n].
class bars_structure {
 public:
  static bars_structure build(const std::vector<std::uint64_t>& composition,
                              std::optional<std::uint32_t> forced_k = std::nullopt) {
    if (composition.empty()) raise(errc::empty_composition, "composition is empty");
    std::uint64_t n = 0;
    for (auto b : composition) {
      if (b == 0) raise(errc::zero_bar, "bar sizes must be positive");
      n += b;
    }
    bars_structure g;
    g.n_ = n;
    g.m_ = composition.size();
    g.k_ = forced_k ? *forced_k : default_k(n);
    if (g.k_ < 1 || g.k_ > 8) raise(errc::invalid_k, "block parameter k must be in [1, 8]");
    {
      bit_builder s;
      for (auto b : composition) {
        s.push_back(true);
        for (std::uint64_t h = 1; h < b; ++h) s.push_back(false);
      }
      g.s_ = bit_vector(std::move(s), bit_vector::mode_t::plain);
    }
    // minimal whole-bar prefixes of >= k cells; a short final block is legal
    std::vector<std::uint64_t> block_first;  // canonical index of each block's first cell
    std::vector<std::uint64_t> minima;       // smallest bar size per block
    {
      std::uint64_t cum = 0, first = 1, mn = ~0ull;
      for (auto b : composition) {
        if (cum == 0) first = (block_first.empty() ? 1 : block_first.back() + (&b - composition.data() == 0 ? 0 : 0));
        cum += b;
        mn = std::min(mn, b);
        if (cum >= g.k_) {
          block_first.push_back(first);
          minima.push_back(mn);
          first += cum;
          cum = 0;
          mn = ~0ull;
        }
      }
      if (cum > 0) {
        block_first.push_back(first);
        minima.push_back(mn);
      }
    }
    g.block_count_ = block_first.size();
    {
      std::vector<bool> bbits(n, false);
      for (auto f : block_first) bbits[f - 1] = true;
      g.b_ = bit_vector(bbits, bit_vector::mode_t::sparse);
    }
    g.lookup_ = std::make_shared<const lookup_table>(lookup_table::build(g.k_));
    g.build_ctree(minima);
    return g;
  }

  static std::uint32_t default_k(std::uint64_t n) {
    if (n < 4) return 1;
    double v = std::floor(std::log2(std::log2(static_cast<double>(n))));
    return static_cast<std::uint32_t>(std::clamp(v, 1.0, 8.0));
  }

  /// Rebuild from the serialized payload (everything else is derived).
  static bars_structure from_parts(const bit_vector& s_bits, std::uint32_t k) {
    if (s_bits.size() == 0 || !s_bits.get(1))
      raise(errc::bad_container, "bar payload must start with a bar's lowest cell");
    std::vector<std::uint64_t> composition;
    std::uint64_t m = s_bits.ones();
    for (std::uint64_t i = 1; i <= m; ++i) {
      std::uint64_t start = *s_bits.select1(i);
      std::uint64_t end = (i < m) ? *s_bits.select1(i + 1) : s_bits.size() + 1;
      composition.push_back(end - start);
    }
    return build(composition, k);
  }

  std::uint64_t n() const { return n_; }
  std::uint64_t bar_count() const { return m_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t block_count() const { return block_count_; }
  const bit_vector& s_bits() const { return s_; }
  const bit_vector& b_bits() const { return b_; }
  const lookup_table& lookup() const { return *lookup_; }
  const ordinal_tree& ctree() const { return ctree_; }
  std::uint32_t ctree_node_of_block(std::uint64_t i) const { return pre_of_block_[i - 1]; }
  std::uint64_t block_of_ctree_node(std::uint32_t v) const { return block_of_pre_[v]; }

  std::vector<std::uint64_t> composition() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 1; i <= m_; ++i) out.push_back(bar_size(i));
    return out;
  }

  // --- the O(1) helper table ---

  std::uint64_t bar_of(std::uint64_t x) const {
    check_cell(x);
    return s_.rank1(x);
  }
  std::uint64_t first_in_bar(std::uint64_t x) const {
    check_cell(x);
    return *s_.select1(s_.rank1(x));
  }
  std::uint64_t cell_height(std::uint64_t x) const { return x - first_in_bar(x); }
  std::uint64_t block_of(std::uint64_t x) const {
    check_cell(x);
    return b_.rank1(x);
  }
  std::uint64_t bar_size(std::uint64_t i) const {
    if (i < 1 || i > m_) raise(errc::invalid_cell, "bar index out of range");
    std::uint64_t start = *s_.select1(i);
    auto next = s_.select1(i + 1);
    return next ? *next - start : n_ + 1 - start;
  }

  std::optional<std::uint64_t> neighbor(std::uint64_t x, direction dir) const {
    check_cell(x);
    switch (dir) {
      case direction::up:
        if (x == n_ || s_.get(x + 1)) return std::nullopt;
        return x + 1;
      case direction::down:
        if (s_.get(x)) return std::nullopt;
        return x - 1;
      case direction::left: {
        std::uint64_t b = s_.rank1(x);
        if (b == 1) return std::nullopt;
        std::uint64_t cl = *s_.select1(b - 1);
        std::uint64_t h = x - *s_.select1(b);
        if (cl + h < *s_.select1(b)) return cl + h;  // left bar reaches height h
        return std::nullopt;
      }
      case direction::right: {
        std::uint64_t b = s_.rank1(x);
        if (b == m_) return std::nullopt;
        std::uint64_t cr = *s_.select1(b + 1);
        std::uint64_t h = x - *s_.select1(b);
        if (bar_size(b + 1) >= h + 1) return cr + h;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::uint32_t degree(std::uint64_t x) const {
    std::uint32_t d = 0;
    for (auto dir : {direction::left, direction::right, direction::up, direction::down})
      if (neighbor(x, dir)) ++d;
    return d;
  }

  bool adjacent(std::uint64_t x1, std::uint64_t x2) const {
    for (auto dir : {direction::left, direction::right, direction::up, direction::down})
      if (neighbor(x1, dir) == x2) return true;
    return false;
  }

  bool is_visible(std::uint64_t x1, std::uint64_t x2) const {
    bars_vis_trace t;
    return is_visible_traced(x1, x2, t);
  }

  bool is_visible_traced(std::uint64_t x1, std::uint64_t x2, bars_vis_trace& t) const {
    check_cell(x1);
    check_cell(x2);
    if (x1 > x2) std::swap(x1, x2);
    if (s_.rank1(x1) == s_.rank1(x2)) return t.result = true;
    std::uint64_t h = x1 - *s_.select1(s_.rank1(x1));
    if (h != x2 - *s_.select1(s_.rank1(x2))) return t.result = false;
    if (s_.get(x1) && s_.get(x2)) return t.result = true;
    std::uint64_t i = b_.rank1(x1), j = b_.rank1(x2);
    t.block1 = i;
    t.block2 = j;
    if (i == j) return t.result = vis_block(x1, x2);
    std::uint64_t last_i = *b_.select1(i + 1) - 1;
    std::uint64_t first_j = *b_.select1(j);
    if (cell_height(last_i) + 1 < h + 1) return t.result = false;  // w does not exist
    if (bar_size(s_.rank1(first_j)) < h + 1) return t.result = false;  // z does not exist
    std::uint64_t w = first_in_bar(last_i) + h;
    std::uint64_t z = first_j + h;
    if (!vis_block(x1, w) || !vis_block(z, x2)) return t.result = false;
    if (j == i + 1) return t.result = true;
    t.used_interior = true;
    std::uint32_t lca_node = ctree_.lca(pre_of_block_[i], pre_of_block_[j - 2]);
    t.lca_block = block_of_pre_[lca_node];
    std::uint64_t lo = block_min_size(t.lca_block);
    t.lo = lo;
    return t.result = (lo >= h + 1);
  }

 private:
  void check_cell(std::uint64_t x) const {
    if (x < 1 || x > n_) raise(errc::invalid_cell, "canonical index out of range");
  }

  /// Within-block visibility via the lookup table; u <= v, equal heights.
  bool vis_block(std::uint64_t u, std::uint64_t v) const {
    if (s_.rank1(u) == s_.rank1(v)) return true;
    std::uint64_t blk = b_.rank1(u);
    std::uint64_t q = *b_.select1(blk);
    if (v - q >= k_) {  // leftover cell: redirect one bar to the left
      auto y = neighbor(v, direction::left);
      if (!y) return false;
      v = *y;
      if (s_.rank1(u) == s_.rank1(v)) return true;
    }
    std::uint64_t code = block_code(q);
    return lookup_->vis(code, static_cast<std::uint32_t>(u - q + 1), static_cast<std::uint32_t>(v - q + 1));
  }

  /// Shape bits of the block's main cells after the leading 1; the final
  /// block may be short, in which case the padding zeros only extend its
  /// last bar, which no within-block answer depends on.
  std::uint64_t block_code(std::uint64_t q) const {
    std::uint32_t avail = static_cast<std::uint32_t>(std::min<std::uint64_t>(k_ - 1, n_ - q));
    return avail ? s_.extract(q + 1, avail) : 0;
  }

  std::uint64_t block_min_size(std::uint64_t blk) const {
    std::uint64_t q = *b_.select1(blk);
    std::uint64_t c_last = (blk < block_count_) ? *b_.select1(blk + 1) - 1 : n_;
    std::uint64_t h2 = cell_height(c_last) + 1;  // the last bar, leftovers included
    auto h1 = lookup_->min_except_last(block_code(q));
    return h1 ? std::min<std::uint64_t>(*h1, h2) : h2;
  }

  void build_ctree(const std::vector<std::uint64_t>& minima) {
    std::uint64_t l = minima.size();
    std::vector<std::uint32_t> left(l + 1, 0), right(l + 1, 0), stack;
    for (std::uint32_t i = 1; i <= l; ++i) {
      std::uint32_t last = 0;
      while (!stack.empty() && minima[stack.back() - 1] > minima[i - 1]) {
        last = stack.back();
        stack.pop_back();
      }
      left[i] = last;
      if (!stack.empty()) right[stack.back()] = i;
      stack.push_back(i);
    }
    std::uint32_t root = stack.empty() ? 0 : stack.front();
    // binary tree -> ordinal tree with explicit leaf sentinels so the
    // left/right distinction (and with it the in-order) survives
    std::vector<std::uint32_t> degrees;
    std::vector<std::uint32_t> lo_of_block(l + 1, 0);
    std::queue<std::uint32_t> q;  // block id, 0 = sentinel
    q.push(root);
    std::uint32_t lo_idx = 0;
    while (!q.empty()) {
      std::uint32_t b = q.front();
      q.pop();
      ++lo_idx;
      if (b == 0) {
        degrees.push_back(0);
        continue;
      }
      lo_of_block[b] = lo_idx;
      degrees.push_back(2);
      q.push(left[b]);
      q.push(right[b]);
    }
    ctree_ = ordinal_tree::build(degrees, ordinal_tree::mode_t::compact);
    pre_of_block_.assign(l, 0);
    block_of_pre_.assign(ctree_.node_count() + 1, 0);
    for (std::uint32_t b = 1; b <= l; ++b) {
      pre_of_block_[b - 1] = ctree_.level_order_select(lo_of_block[b]);
      block_of_pre_[pre_of_block_[b - 1]] = b;
    }
  }

  std::uint64_t n_ = 0;
  std::uint64_t m_ = 0;
  std::uint32_t k_ = 1;
  std::uint64_t block_count_ = 0;
  bit_vector s_;
  bit_vector b_;
  std::shared_ptr<const lookup_table> lookup_;
  ordinal_tree ctree_;
  std::vector<std::uint32_t> pre_of_block_;
  std::vector<std::uint64_t> block_of_pre_;
};

}  // namespace polyform
