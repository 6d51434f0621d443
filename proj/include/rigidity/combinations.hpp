#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace rigidity {

/// Advances `idx` (strictly increasing indices into [0, n)) to the next
/// k-subset in lexicographic order. Returns false after the last subset.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

/// Binomial coefficient, saturating at SIZE_MAX.
inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > static_cast<unsigned __int128>(SIZE_MAX)) return SIZE_MAX;
  }
  return static_cast<std::size_t>(result);
}

/// Indices of [0, n) not in the sorted list `chosen`.
inline std::vector<std::size_t> complement(const std::vector<std::size_t>& chosen, std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n - chosen.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < chosen.size() && chosen[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace rigidity
