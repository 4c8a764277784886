#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace zsum::detail {

// Run-time sized bit set with just enough surface for the subset-sum folds:
// whole-vector OR, OR-with-shift (integer sums) and OR-with-rotation (sums
// mod n).
class BitVec {
 public:
  explicit BitVec(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  bool operator==(const BitVec&) const = default;

  void or_with(const BitVec& src) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= src.words_[w];
  }

  // this |= (src << k). Aliasing src == *this is fine: words are combined
  // from high to low, so every source word is read before it is written.
  void or_shifted(const BitVec& src, int k) {
    if (k == 0) {
      or_with(src);
      return;
    }
    int wshift = k >> 6;
    int bshift = k & 63;
    for (int w = static_cast<int>(words_.size()) - 1; w >= wshift; --w) {
      std::uint64_t chunk = src.words_[w - wshift] << bshift;
      if (bshift != 0 && w - wshift - 1 >= 0)
        chunk |= src.words_[w - wshift - 1] >> (64 - bshift);
      words_[w] |= chunk;
    }
    clear_tail();
  }

  // this |= rotate(src, k) where bit i of src lands on (i + k) mod n.
  // Requires size() == n on both sides and src must not alias *this.
  void or_rotated(const BitVec& src, int k, int n) {
    src.for_each_set([&](int i) {
      int j = i + k;
      if (j >= n) j -= n;
      set(j);
    });
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t m = words_[w];
      while (m != 0) {
        fn(static_cast<int>(w * 64) + std::countr_zero(m));
        m &= m - 1;
      }
    }
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

 private:
  // Bits at positions >= bits_ stay zero so that operator== means set equality.
  void clear_tail() {
    int used = bits_ & 63;
    if (used != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << used) - 1;
  }

  int bits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace zsum::detail
