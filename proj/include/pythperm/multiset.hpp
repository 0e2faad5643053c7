#pragma once

// Lexicographic enumeration of sorted multisets (combinations with
// repetition) over an integer interval, with exact ranking so that any
// contiguous slice of the sequence can be visited independently.

#include <cstdint>
#include <string>
#include <vector>

#include "pythperm/checked.hpp"

namespace pythperm {

/// C(n, k), throwing OverflowError if it does not fit in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // acc * (n - i) / (i + 1) is always exact: it is C(n, i + 1) * (stuff) chain.
    acc = acc * (n - i) / (i + 1);
    if (acc > UINT64_MAX) throw OverflowError("binomial C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

/// Number of sorted multisets of size `arity` drawn from `width` values.
inline std::uint64_t multiset_count(std::uint64_t width, std::uint64_t arity) {
  if (arity == 0) return 1;
  if (width == 0) return 0;
  return binomial(width + arity - 1, arity);
}

/// Cursor over the ascending multisets of size `arity` with entries in [lo, hi].
class MultisetCursor {
 public:
  MultisetCursor(Int lo, Int hi, std::size_t arity) : lo_(lo), hi_(hi), values_(arity, lo) {
    if (lo > hi) throw ParameterError("empty value range");
    width_ = static_cast<std::uint64_t>(checked::sub(hi, lo)) + 1;
  }

  /// Position the cursor at lexicographic index `rank`.
  void seek(std::uint64_t rank) {
    const std::size_t k = values_.size();
    std::uint64_t offset = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
      const std::uint64_t remaining = k - pos - 1;
      for (;; ++offset) {
        if (offset >= width_) throw ParameterError("multiset rank out of range");
        const std::uint64_t block = multiset_count(width_ - offset, remaining);
        if (rank < block) break;
        rank -= block;
      }
      values_[pos] = lo_ + static_cast<Int>(offset);
    }
  }

  /// Advance to the next multiset; false when the sequence is exhausted.
  bool next() {
    std::size_t i = values_.size();
    while (i > 0 && values_[i - 1] == hi_) --i;
    if (i == 0) return false;
    const Int bumped = values_[i - 1] + 1;
    for (std::size_t j = i - 1; j < values_.size(); ++j) values_[j] = bumped;
    return true;
  }

  const std::vector<Int>& values() const noexcept { return values_; }

 private:
  Int lo_;
  Int hi_;
  std::uint64_t width_ = 0;
  std::vector<Int> values_;
};

}  // namespace pythperm
