#pragma once

// Fornberg's recursion for finite-difference weights on an arbitrary node
// set.  Returns the weights of the m-th derivative at x0 for the given grid
// locations; exact for polynomials up to degree grid.size()-1.

#include <cstddef>
#include <span>
#include <vector>

namespace nslab {

inline std::vector<double> fd_weights(double x0, std::span<const double> grid,
                                      int order) {
  const std::size_t n = grid.size();
  const int m = order;
  // c[k][j]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = grid[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = static_cast<int>(std::min<std::size_t>(i, m));
    double c2 = 1.0;
    const double c5 = c4;
    c4 = grid[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = grid[i] - grid[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c[m];
}

}  // namespace nslab
