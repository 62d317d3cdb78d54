#pragma once

#include <cstddef>

#include "cholgrad/matrix.hpp"

namespace cholgrad {

// Column-step partition of a square matrix around diagonal element j
// (0-based):
//
//   r = a[j, 0:j]       d = a[j, j]
//   b = a[j+1:n, 0:j]   c = a[j+1:n, j]
//
// All four are views into the parent. r and b are empty when j == 0; b and c
// are empty when j == n - 1.
template <class View>
struct Level2Partition {
  View r;
  View d;
  View b;
  View c;
};

template <class View>
Level2Partition<View> level2_partition(View a, std::size_t j) {
  const std::size_t n = a.rows();
  return {a.block(j, 0, 1, j), a.block(j, j, 1, 1), a.block(j + 1, 0, n - j - 1, j),
          a.block(j + 1, j, n - j - 1, 1)};
}

// Block-step partition around the diagonal block [lo, hi) x [lo, hi):
//
//   r = a[lo:hi, 0:lo]   d = a[lo:hi, lo:hi]
//   b = a[hi:n, 0:lo]    c = a[hi:n, lo:hi]
//
// Only the lower triangle of d is meaningful.
template <class View>
struct Level3Partition {
  View r;
  View d;
  View b;
  View c;
};

template <class View>
Level3Partition<View> level3_partition(View a, std::size_t lo, std::size_t hi) {
  const std::size_t n = a.rows();
  const std::size_t w = hi - lo;
  return {a.block(lo, 0, w, lo), a.block(lo, lo, w, w), a.block(hi, 0, n - hi, lo),
          a.block(hi, lo, n - hi, w)};
}

}  // namespace cholgrad
