#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "polyform/common.hpp"

namespace polyform {

/// Append-only bit sequence used while constructing encodings.
/// Bit i (1-based) lives at word (i-1)/64, LSB-first within the word.
class bit_builder {
 public:
  void push_back(bool b) {
    if ((n_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= std::uint64_t{1} << (n_ & 63);
    ++n_;
  }
  std::uint64_t size() const { return n_; }
  std::vector<std::uint64_t> take_words() { return std::move(words_); }

 private:
  std::vector<std::uint64_t> words_;
  std::uint64_t n_ = 0;
};

namespace detail {

/// r-th (1-based) set bit of word, as a 0-based offset.
inline std::uint32_t select_in_word(std::uint64_t word, std::uint32_t r) {
  std::uint32_t offset = 0;
  for (std::uint32_t half = 32; half > 0; half >>= 1) {
    std::uint64_t mask = (std::uint64_t{1} << half) - 1;
    auto c = static_cast<std::uint32_t>(std::popcount(word & mask));
    if (r > c) {
      r -= c;
      word >>= half;
      offset += half;
    }
  }
  return offset;
}

}  // namespace detail

/// Bit sequence with rank/select. Plain mode keeps the raw bits plus a
/// two-level rank directory and sampled select; sparse mode stores the
/// positions of the ones with a high/low split and answers through the
/// high part's directory. Indexing is 1-based and rank is inclusive:
/// rank1(i) counts ones among positions 1..i, rank1(0) = 0.
class bit_vector {
 public:
  enum class mode_t : std::uint8_t { plain = 0, sparse = 1 };

  bit_vector() { build_plain({}, 0); }

  explicit bit_vector(const std::vector<bool>& bits, mode_t m = mode_t::plain) {
    std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
    construct(std::move(words), bits.size(), m);
  }

  bit_vector(std::vector<std::uint64_t> words, std::uint64_t n, mode_t m = mode_t::plain) {
    construct(std::move(words), n, m);
  }

  explicit bit_vector(bit_builder&& b, mode_t m = mode_t::plain) {
    std::uint64_t n = b.size();
    construct(b.take_words(), n, m);
  }

  std::uint64_t size() const { return n_; }
  std::uint64_t ones() const { return ones_; }
  std::uint64_t zeros() const { return n_ - ones_; }
  mode_t mode() const { return mode_; }

  bool get(std::uint64_t i) const {
    if (i < 1 || i > n_) raise(errc::index_out_of_range, "bit index out of range");
    if (mode_ == mode_t::plain) return word_bit(i - 1);
    return rank1(i) - rank1(i - 1) == 1;
  }

  /// Ones among positions 1..i.
  std::uint64_t rank1(std::uint64_t i) const {
    if (i > n_) raise(errc::index_out_of_range, "rank index out of range");
    if (i == 0) return 0;
    return mode_ == mode_t::plain ? plain_rank_prefix(i) : sparse_rank_prefix(i);
  }

  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

  /// Position of the j-th one; nullopt when j exceeds the number of ones.
  std::optional<std::uint64_t> select1(std::uint64_t j) const {
    if (j == 0) raise(errc::index_out_of_range, "select rank must be >= 1");
    if (j > ones_) return std::nullopt;
    return mode_ == mode_t::plain ? plain_select1(j) : sparse_select1(j);
  }

  std::optional<std::uint64_t> select0(std::uint64_t j) const {
    if (j == 0) raise(errc::index_out_of_range, "select rank must be >= 1");
    if (j > zeros()) return std::nullopt;
    if (mode_ == mode_t::plain) return plain_select0(j);
    std::uint64_t lo = 1, hi = n_;
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (rank0(mid) >= j) hi = mid; else lo = mid + 1;
    }
    return lo;
  }

  /// len (<= 64) bits starting at 1-based position i, result LSB = bit i.
  std::uint64_t extract(std::uint64_t i, std::uint32_t len) const {
    if (len == 0) return 0;
    if (len > 64 || i < 1 || i + len - 1 > n_) raise(errc::index_out_of_range, "extract out of range");
    if (mode_ != mode_t::plain) {
      std::uint64_t v = 0;
      for (std::uint32_t t = 0; t < len; ++t)
        if (get(i + t)) v |= std::uint64_t{1} << t;
      return v;
    }
    std::uint64_t p = i - 1;
    std::uint64_t w = p / 64, off = p % 64;
    std::uint64_t v = words_[w] >> off;
    if (off + len > 64 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
    if (len < 64) v &= (std::uint64_t{1} << len) - 1;
    return v;
  }

  /// Stored bits: n for plain, low+high parts for sparse.
  std::uint64_t payload_bits() const { return payload_bits_; }
  /// Acceleration data rebuilt on load, reported separately.
  std::uint64_t index_bits() const { return index_bits_; }

  /// Raw payload, MSB-first within each byte (serialization order).
  std::vector<std::uint8_t> packed_msb() const {
    std::vector<std::uint8_t> out((n_ + 7) / 8, 0);
    for (std::uint64_t j = 1; j <= ones_; ++j) {
      std::uint64_t p = *select1(j) - 1;
      out[p / 8] |= std::uint8_t(0x80u >> (p % 8));
    }
    return out;
  }

  static bit_vector from_packed_msb(const std::vector<std::uint8_t>& bytes, std::uint64_t n, mode_t m) {
    if (bytes.size() < (n + 7) / 8) raise(errc::bad_container, "bit payload shorter than declared");
    std::vector<std::uint64_t> words((n + 63) / 64, 0);
    for (std::uint64_t i = 0; i < n; ++i)
      if (bytes[i / 8] & (0x80u >> (i % 8))) words[i / 64] |= std::uint64_t{1} << (i % 64);
    return bit_vector(std::move(words), n, m);
  }

  std::vector<bool> to_bools() const {
    std::vector<bool> out(n_, false);
    for (std::uint64_t j = 1; j <= ones_; ++j) out[*select1(j) - 1] = true;
    return out;
  }

 private:
  static constexpr std::uint64_t kBlockBits = 512;      // u16 in-superblock offsets
  static constexpr std::uint64_t kSuperBits = 65536;    // u64 cumulative counts
  static constexpr std::uint64_t kSelectSample = 8192;  // ones/zeros per sample

  void construct(std::vector<std::uint64_t> words, std::uint64_t n, mode_t m) {
    words.resize((n + 63) / 64, 0);
    if (n % 64) words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    if (m == mode_t::plain) build_plain(std::move(words), n);
    else build_sparse(words, n);
  }

  bool word_bit(std::uint64_t p) const { return (words_[p / 64] >> (p % 64)) & 1; }

  void build_plain(std::vector<std::uint64_t> words, std::uint64_t n) {
    mode_ = mode_t::plain;
    n_ = n;
    words_ = std::move(words);
    std::uint64_t nb = n / kBlockBits + 1;
    std::uint64_t ns = n / kSuperBits + 1;
    super_.assign(ns, 0);
    block_.assign(nb, 0);
    sample1_.clear();
    sample0_.clear();
    std::uint64_t acc = 0, zacc = 0;
    for (std::uint64_t b = 0; b < nb; ++b) {
      std::uint64_t start = b * kBlockBits;
      if (start % kSuperBits == 0) super_[start / kSuperBits] = acc;
      block_[b] = static_cast<std::uint16_t>(acc - super_[start / kSuperBits]);
      std::uint64_t w0 = b * (kBlockBits / 64);
      std::uint64_t w1 = std::min<std::uint64_t>(w0 + kBlockBits / 64, words_.size());
      for (std::uint64_t w = w0; w < w1; ++w) {
        std::uint64_t base = w * 64;
        std::uint64_t word = words_[w];
        while (word) {
          std::uint64_t pos = base + std::countr_zero(word);
          if (acc % kSelectSample == 0) sample1_.push_back(pos + 1);
          ++acc;
          word &= word - 1;
        }
        std::uint64_t valid = std::min<std::uint64_t>(64, n - base);
        std::uint64_t inv = ~words_[w];
        if (valid < 64) inv &= (std::uint64_t{1} << valid) - 1;
        while (inv) {
          std::uint64_t pos = base + std::countr_zero(inv);
          if (zacc % kSelectSample == 0) sample0_.push_back(pos + 1);
          ++zacc;
          inv &= inv - 1;
        }
      }
    }
    ones_ = acc;
    payload_bits_ = n_;
    index_bits_ = 64 * super_.size() + 16 * block_.size() + 64 * (sample1_.size() + sample0_.size());
  }

  std::uint64_t plain_rank_prefix(std::uint64_t i) const {
    std::uint64_t b = i / kBlockBits;
    std::uint64_t r = super_[i / kSuperBits] + block_[b];
    std::uint64_t wend = i / 64;
    for (std::uint64_t w = b * (kBlockBits / 64); w < wend; ++w) r += std::popcount(words_[w]);
    if (i % 64) r += std::popcount(words_[wend] & ((std::uint64_t{1} << (i % 64)) - 1));
    return r;
  }

  std::uint64_t block_rank(std::uint64_t b) const {
    return super_[b * kBlockBits / kSuperBits] + block_[b];
  }

  std::uint64_t block_rank0(std::uint64_t b) const {
    return std::min(b * kBlockBits, n_) - block_rank(b);
  }

  std::uint64_t plain_select1(std::uint64_t j) const {
    std::uint64_t t = (j - 1) / kSelectSample;
    std::uint64_t lo = (sample1_[t] - 1) / kBlockBits;
    std::uint64_t hi = (t + 1 < sample1_.size()) ? (sample1_[t + 1] - 1) / kBlockBits : n_ / kBlockBits;
    while (lo < hi) {  // last block with block_rank < j
      std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (block_rank(mid) < j) lo = mid; else hi = mid - 1;
    }
    std::uint64_t r = j - block_rank(lo);
    std::uint64_t w = lo * (kBlockBits / 64);
    for (;; ++w) {
      std::uint64_t c = std::popcount(words_[w]);
      if (r <= c) break;
      r -= c;
    }
    return w * 64 + detail::select_in_word(words_[w], static_cast<std::uint32_t>(r)) + 1;
  }

  std::uint64_t plain_select0(std::uint64_t j) const {
    std::uint64_t t = (j - 1) / kSelectSample;
    std::uint64_t lo = (sample0_[t] - 1) / kBlockBits;
    std::uint64_t hi = (t + 1 < sample0_.size()) ? (sample0_[t + 1] - 1) / kBlockBits : n_ / kBlockBits;
    while (lo < hi) {
      std::uint64_t mid = lo + (hi - lo + 1) / 2;
      if (block_rank0(mid) < j) lo = mid; else hi = mid - 1;
    }
    std::uint64_t r = j - block_rank0(lo);
    std::uint64_t w = lo * (kBlockBits / 64);
    for (;; ++w) {
      std::uint64_t c = std::popcount(~words_[w]);
      if (r <= c) break;
      r -= c;
    }
    return w * 64 + detail::select_in_word(~words_[w], static_cast<std::uint32_t>(r)) + 1;
  }

  // --- sparse: high/low positional split over the ones ---

  void build_sparse(const std::vector<std::uint64_t>& words, std::uint64_t n) {
    mode_ = mode_t::sparse;
    n_ = n;
    std::vector<std::uint64_t> pos;
    for (std::uint64_t w = 0; w < words.size(); ++w) {
      std::uint64_t word = words[w];
      while (word) {
        pos.push_back(w * 64 + std::countr_zero(word));
        word &= word - 1;
      }
    }
    ones_ = pos.size();
    low_width_ = 0;
    if (ones_ > 0 && n_ / ones_ > 1) {
      std::uint64_t ratio = n_ / ones_;
      while ((std::uint64_t{1} << (low_width_ + 1)) <= ratio) ++low_width_;
    }
    low_.assign((ones_ * low_width_ + 63) / 64 + 1, 0);
    bit_builder high;
    std::uint64_t bucket = 0;
    for (std::uint64_t j = 0; j < ones_; ++j) {
      std::uint64_t hi = pos[j] >> low_width_;
      while (bucket < hi) {
        high.push_back(false);
        ++bucket;
      }
      high.push_back(true);
      if (low_width_) set_low(j, pos[j] & ((std::uint64_t{1} << low_width_) - 1));
    }
    std::uint64_t max_bucket = (n_ == 0) ? 0 : ((n_ - 1) >> low_width_) + 1;
    while (bucket < max_bucket) {
      high.push_back(false);
      ++bucket;
    }
    high_ = std::make_shared<bit_vector>(std::move(high), mode_t::plain);
    payload_bits_ = ones_ * low_width_ + high_->size();
    index_bits_ = high_->index_bits();
  }

  void set_low(std::uint64_t j, std::uint64_t v) {
    std::uint64_t b = j * low_width_;
    low_[b / 64] |= v << (b % 64);
    if (b % 64 + low_width_ > 64) low_[b / 64 + 1] |= v >> (64 - b % 64);
  }

  std::uint64_t get_low(std::uint64_t j) const {
    if (low_width_ == 0) return 0;
    std::uint64_t b = j * low_width_;
    std::uint64_t v = low_[b / 64] >> (b % 64);
    if (b % 64 + low_width_ > 64) v |= low_[b / 64 + 1] << (64 - b % 64);
    return v & ((std::uint64_t{1} << low_width_) - 1);
  }

  std::uint64_t sparse_select1(std::uint64_t j) const {
    std::uint64_t h = *high_->select1(j);
    return (((h - j) << low_width_) | get_low(j - 1)) + 1;
  }

  std::uint64_t sparse_rank_prefix(std::uint64_t i) const {
    if (ones_ == 0) return 0;
    std::uint64_t q = i - 1;  // count 0-based positions <= q
    std::uint64_t bucket = q >> low_width_;
    std::uint64_t before = 0;
    if (bucket > 0) {
      auto z = high_->select0(bucket);
      before = z ? (*z - bucket) : ones_;
    }
    std::uint64_t lowq = q & (low_width_ ? (std::uint64_t{1} << low_width_) - 1 : 0);
    std::uint64_t j = before;
    while (j < ones_) {
      std::uint64_t h = *high_->select1(j + 1);
      if (h - (j + 1) != bucket) break;
      if (get_low(j) > lowq) break;
      ++j;
    }
    return j;
  }

  mode_t mode_ = mode_t::plain;
  std::uint64_t n_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t payload_bits_ = 0;
  std::uint64_t index_bits_ = 0;

  // plain
  std::vector<std::uint64_t> words_;
  std::vector<std::uint64_t> super_;
  std::vector<std::uint16_t> block_;
  std::vector<std::uint64_t> sample1_;
  std::vector<std::uint64_t> sample0_;

  // sparse
  std::uint32_t low_width_ = 0;
  std::vector<std::uint64_t> low_;
  std::shared_ptr<const bit_vector> high_;
};

}  // namespace polyform
