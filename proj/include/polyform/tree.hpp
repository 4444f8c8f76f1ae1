#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "polyform/bitvector.hpp"
#include "polyform/common.hpp"

namespace polyform {

/// Ordinal tree built from a level-order child-count sequence. Nodes are
/// exposed as preorder ids in [1, n]; levels are 0-based with the root at
/// level 0. Two modes share the public surface: reference keeps explicit
/// arrays and is the correctness baseline; compact answers from the 2n-bit
/// level-order shape encoding (degree ones followed by a zero, per node)
/// plus a level-boundary bitvector, with the preorder translation kept as
/// explicit arrays whose size is reported separately.
class ordinal_tree {
 public:
  enum class mode_t : std::uint8_t { reference = 0, compact = 1 };
  using node = std::uint32_t;

  ordinal_tree() = default;

  static ordinal_tree build(const std::vector<std::uint32_t>& degrees, mode_t m) {
    if (degrees.empty()) raise(errc::malformed_degrees, "degree sequence is empty");
    std::uint64_t n = degrees.size();
    if (n > 0xFFFFFFFEull) raise(errc::malformed_degrees, "tree too large");
    std::uint64_t sum = 0;
    for (auto d : degrees) sum += d;
    if (sum != n - 1) raise(errc::malformed_degrees, "degree sum must equal node count - 1");

    ordinal_tree t;
    t.mode_ = m;
    t.n_ = static_cast<std::uint32_t>(n);

    // level-order assignment: children of w are the next deg(w) ids
    std::vector<std::uint32_t> first_child(n + 2, 0), parent_lo(n + 1, 0), depth_lo(n + 1, 0);
    std::uint64_t next = 2;
    for (std::uint64_t w = 1; w <= n; ++w) {
      first_child[w] = static_cast<std::uint32_t>(next);
      if (degrees[w - 1] > 0 && next <= w)
        raise(errc::malformed_degrees, "degree sequence does not describe a tree");
      for (std::uint32_t c = 0; c < degrees[w - 1]; ++c) {
        parent_lo[next] = static_cast<std::uint32_t>(w);
        depth_lo[next] = depth_lo[w] + 1;
        ++next;
      }
    }
    first_child[n + 1] = static_cast<std::uint32_t>(next);

    t.level_start_.clear();
    for (std::uint64_t w = 1; w <= n; ++w)
      if (w == 1 || depth_lo[w] != depth_lo[w - 1]) t.level_start_.push_back(static_cast<std::uint32_t>(w));
    t.level_start_.push_back(static_cast<std::uint32_t>(n + 1));

    // preorder ids + euler tour in one traversal
    t.perm_.assign(n, 0);
    t.inv_.assign(n, 0);
    t.euler_node_.clear();
    t.euler_node_.reserve(2 * n - 1);
    t.euler_depth_.clear();
    t.euler_depth_.reserve(2 * n - 1);
    t.first_occ_.assign(n, 0);
    {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;  // (lo id, children emitted)
      std::uint32_t next_pre = 1;
      stack.emplace_back(1, 0);
      t.assign_pre(1, next_pre++, depth_lo);
      while (!stack.empty()) {
        auto& [w, emitted] = stack.back();
        if (emitted == degrees[w - 1]) {
          stack.pop_back();
          if (!stack.empty()) {
            auto pw = stack.back().first;
            t.push_euler(t.perm_[pw - 1], depth_lo[pw]);
          }
          continue;
        }
        std::uint32_t child = first_child[w] + emitted;
        ++emitted;
        t.assign_pre(child, next_pre++, depth_lo);
        stack.emplace_back(child, 0);
      }
    }

    // shape bits, level-order
    {
      bit_builder b;
      for (std::uint64_t w = 1; w <= n; ++w) {
        for (std::uint32_t c = 0; c < degrees[w - 1]; ++c) b.push_back(true);
        b.push_back(false);
      }
      t.louds_ = bit_vector(std::move(b), bit_vector::mode_t::plain);
    }
    {
      std::vector<bool> bd(n, false);
      for (std::size_t l = 0; l + 1 < t.level_start_.size(); ++l) bd[t.level_start_[l] - 1] = true;
      t.boundary_ = bit_vector(bd, bit_vector::mode_t::sparse);
    }

    t.build_rmq();

    if (m == mode_t::reference) {
      t.parent_lo_ = std::move(parent_lo);
      t.depth_lo_ = std::move(depth_lo);
      t.first_child_ = std::move(first_child);
    } else {
      t.level_start_.clear();
      t.level_start_.shrink_to_fit();
    }
    return t;
  }

  /// Rebuild from the serialized shape bitstring.
  static ordinal_tree from_shape_bits(const bit_vector& bits, mode_t m) {
    std::vector<std::uint32_t> degrees;
    std::uint32_t run = 0;
    for (std::uint64_t i = 1; i <= bits.size(); ++i) {
      if (bits.get(i)) {
        ++run;
      } else {
        degrees.push_back(run);
        run = 0;
      }
    }
    if (run != 0) raise(errc::malformed_degrees, "shape bitstring does not end a node");
    return build(degrees, m);
  }

  std::uint32_t node_count() const { return n_; }
  mode_t mode() const { return mode_; }

  /// Number of levels (max depth + 1).
  std::uint32_t depth_count() const {
    return static_cast<std::uint32_t>(boundary_.ones());
  }

  std::uint32_t degree(node v) const {
    std::uint32_t w = lo_of(v);
    std::uint64_t end = *louds_.select0(w);
    std::uint64_t begin = (w == 1) ? 0 : *louds_.select0(w - 1);
    return static_cast<std::uint32_t>(end - begin - 1);
  }

  std::optional<node> parent(node v) const {
    std::uint32_t w = lo_of(v);
    if (w == 1) return std::nullopt;
    if (mode_ == mode_t::reference) return perm_[parent_lo_[w] - 1];
    std::uint64_t p = *louds_.select1(w - 1);
    return perm_[louds_.rank0(p)];  // rank0(p) + 1, as 0-based array access
  }

  std::optional<node> child(node v, std::uint32_t i) const {
    std::uint32_t w = lo_of(v);
    if (i < 1) raise(errc::invalid_index, "child index must be >= 1");
    if (i > degree_lo(w)) return std::nullopt;
    if (mode_ == mode_t::reference) return perm_[first_child_[w] + i - 2];
    std::uint64_t begin = (w == 1) ? 0 : *louds_.select0(w - 1);
    return perm_[louds_.rank1(begin + i)];  // child lo id - 1
  }

  std::uint32_t depth(node v) const { return depth_lo(lo_of(v)); }

  /// Ancestor of v at absolute level `level` (0 = root, depth(v) = v itself).
  node ancestor_at_level(node v, std::uint32_t level) const {
    std::uint32_t d = depth(v);
    if (level > d) raise(errc::invalid_level, "ancestor level below the node");
    if (level == d) return v;
    if (level == 0) return perm_[0];
    // preorder ids are increasing within a level; the ancestor is the
    // level's last node with preorder id <= v
    std::uint32_t lo = level_begin(level), hi = level_begin(level + 1);
    while (hi - lo > 1) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      if (perm_[mid - 1] <= v) lo = mid; else hi = mid;
    }
    return perm_[lo - 1];
  }

  std::uint32_t level_order_rank(node v) const { return lo_of(v); }

  node level_order_select(std::uint32_t w) const {
    if (w < 1 || w > n_) raise(errc::invalid_index, "level-order index out of range");
    return perm_[w - 1];
  }

  /// Nodes at the same level placed before v.
  std::uint32_t level_rank(node v) const {
    std::uint32_t w = lo_of(v);
    return w - level_begin(depth_lo(w));
  }

  std::optional<node> level_select(std::uint32_t level, std::uint32_t i) const {
    if (i < 1) raise(errc::invalid_index, "level index must be >= 1");
    if (level >= depth_count()) return std::nullopt;
    std::uint32_t begin = level_begin(level), end = level_begin(level + 1);
    if (begin + i - 1 >= end) return std::nullopt;
    return perm_[begin + i - 2];
  }

  std::optional<node> level_pred(node v) const {
    std::uint32_t w = lo_of(v);
    if (w == level_begin(depth_lo(w))) return std::nullopt;
    return perm_[w - 2];
  }

  std::optional<node> level_succ(node v) const {
    std::uint32_t w = lo_of(v);
    if (w + 1 >= level_begin(depth_lo(w) + 1)) return std::nullopt;
    return perm_[w];
  }

  node lca(node u, node v) const {
    check_node(u);
    check_node(v);
    std::uint32_t a = first_occ_[u - 1], b = first_occ_[v - 1];
    if (a > b) std::swap(a, b);
    return euler_node_[rmq_pos(a, b)];
  }

  const bit_vector& shape_bits() const { return louds_; }
  std::uint64_t shape_payload_bits() const { return louds_.size(); }

  /// Rank/select directories plus the level-boundary vector.
  std::uint64_t index_bits() const {
    return louds_.index_bits() + boundary_.payload_bits() + boundary_.index_bits();
  }

  /// Preorder translation arrays and the lca tour, reported separately.
  std::uint64_t aux_bits() const {
    std::uint64_t bits = 32ull * (perm_.size() + inv_.size());
    bits += 32ull * (euler_node_.size() + euler_depth_.size() + first_occ_.size());
    bits += 32ull * (rmq_block_pos_.size() + rmq_table_.size());
    if (mode_ == mode_t::reference)
      bits += 32ull * (parent_lo_.size() + depth_lo_.size() + first_child_.size() + level_start_.size());
    return bits;
  }

  std::vector<std::uint32_t> degrees_level_order() const {
    std::vector<std::uint32_t> out(n_);
    for (std::uint32_t w = 1; w <= n_; ++w) out[w - 1] = degree_lo(w);
    return out;
  }

 private:
  void assign_pre(std::uint32_t lo_id, std::uint32_t pre, const std::vector<std::uint32_t>& depth_lo) {
    perm_[lo_id - 1] = pre;
    inv_[pre - 1] = lo_id;
    first_occ_[pre - 1] = static_cast<std::uint32_t>(euler_node_.size());
    push_euler(pre, depth_lo[lo_id]);
  }

  void push_euler(std::uint32_t pre, std::uint32_t d) {
    euler_node_.push_back(pre);
    euler_depth_.push_back(d);
  }

  void check_node(node v) const {
    if (v < 1 || v > n_) raise(errc::invalid_node, "node id out of range");
  }

  std::uint32_t lo_of(node v) const {
    check_node(v);
    return inv_[v - 1];
  }

  std::uint32_t degree_lo(std::uint32_t w) const {
    if (mode_ == mode_t::reference) return first_child_[w + 1] - first_child_[w];
    std::uint64_t end = *louds_.select0(w);
    std::uint64_t begin = (w == 1) ? 0 : *louds_.select0(w - 1);
    return static_cast<std::uint32_t>(end - begin - 1);
  }

  std::uint32_t depth_lo(std::uint32_t w) const {
    if (mode_ == mode_t::reference) return depth_lo_[w];
    return static_cast<std::uint32_t>(boundary_.rank1(w) - 1);
  }

  /// First level-order id of `level`; n+1 when the level is past the last.
  std::uint32_t level_begin(std::uint32_t level) const {
    if (mode_ == mode_t::reference) {
      if (level >= level_start_.size()) return n_ + 1;
      return level_start_[level];
    }
    auto s = boundary_.select1(level + 1);
    return s ? static_cast<std::uint32_t>(*s) : n_ + 1;
  }

  // --- blocked euler-tour range minimum for lca ---

  static constexpr std::uint32_t kRmqBlock = 64;

  void build_rmq() {
    std::uint32_t len = static_cast<std::uint32_t>(euler_node_.size());
    std::uint32_t nb = (len + kRmqBlock - 1) / kRmqBlock;
    rmq_block_pos_.assign(nb, 0);
    for (std::uint32_t b = 0; b < nb; ++b) {
      std::uint32_t best = b * kRmqBlock;
      for (std::uint32_t i = best + 1; i < std::min(len, (b + 1) * kRmqBlock); ++i)
        if (euler_depth_[i] < euler_depth_[best]) best = i;
      rmq_block_pos_[b] = best;
    }
    rmq_levels_ = 1;
    while ((1u << rmq_levels_) <= nb) ++rmq_levels_;
    rmq_table_.assign(static_cast<std::size_t>(rmq_levels_) * nb, 0);
    for (std::uint32_t b = 0; b < nb; ++b) rmq_table_[b] = rmq_block_pos_[b];
    for (std::uint32_t l = 1; l < rmq_levels_; ++l) {
      for (std::uint32_t b = 0; b + (1u << l) <= nb; ++b) {
        std::uint32_t x = rmq_table_[(l - 1) * nb + b];
        std::uint32_t y = rmq_table_[(l - 1) * nb + b + (1u << (l - 1))];
        rmq_table_[l * nb + b] = (euler_depth_[x] <= euler_depth_[y]) ? x : y;
      }
    }
  }

  std::uint32_t rmq_pos(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t ba = a / kRmqBlock, bb = b / kRmqBlock;
    std::uint32_t best = a;
    if (ba == bb) {
      for (std::uint32_t i = a; i <= b; ++i)
        if (euler_depth_[i] < euler_depth_[best]) best = i;
      return best;
    }
    for (std::uint32_t i = a; i < (ba + 1) * kRmqBlock; ++i)
      if (euler_depth_[i] < euler_depth_[best]) best = i;
    for (std::uint32_t i = bb * kRmqBlock; i <= b; ++i)
      if (euler_depth_[i] < euler_depth_[best]) best = i;
    if (ba + 1 <= bb - 1 && bb >= 1) {
      std::uint32_t lo = ba + 1, hi = bb - 1;
      std::uint32_t span = hi - lo + 1;
      std::uint32_t l = 31 - std::countl_zero(span);
      std::uint32_t nb = static_cast<std::uint32_t>(rmq_block_pos_.size());
      std::uint32_t x = rmq_table_[l * nb + lo];
      std::uint32_t y = rmq_table_[l * nb + hi + 1 - (1u << l)];
      if (euler_depth_[x] < euler_depth_[best]) best = x;
      if (euler_depth_[y] < euler_depth_[best]) best = y;
    }
    return best;
  }

  mode_t mode_ = mode_t::reference;
  std::uint32_t n_ = 0;

  bit_vector louds_;
  bit_vector boundary_;
  std::vector<std::uint32_t> perm_;  // level-order -> preorder
  std::vector<std::uint32_t> inv_;   // preorder -> level-order

  // reference arrays (level-order indexed)
  std::vector<std::uint32_t> parent_lo_;
  std::vector<std::uint32_t> depth_lo_;
  std::vector<std::uint32_t> first_child_;
  std::vector<std::uint32_t> level_start_;

  // lca support
  std::vector<std::uint32_t> euler_node_;
  std::vector<std::uint32_t> euler_depth_;
  std::vector<std::uint32_t> first_occ_;
  std::vector<std::uint32_t> rmq_block_pos_;
  std::vector<std::uint32_t> rmq_table_;
  std::uint32_t rmq_levels_ = 0;
};

}  // namespace polyform
