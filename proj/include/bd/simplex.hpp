#pragma once

#include <cstddef>
#include <vector>

#include "bd/error.hpp"

namespace bd {

template <class T>
struct PackingLpResult {
  T value{0};
  std::vector<T> x;  // per column
  std::vector<T> y;  // per row, optimal duals
};

// Exact primal simplex for max c.x subject to A x <= b, x >= 0, with b >= 0.
// Dense tableau, Bland's rule (no cycling); zero entries are skipped during pivots.
template <class T>
PackingLpResult<T> solve_packing_lp(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                    const std::vector<T>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  const std::size_t cols = n + m;
  for (const T& bi : b) {
    if (bi < 0) throw ParameterError("packing LP needs a nonnegative right-hand side");
  }
  std::vector<std::vector<T>> tab(m, std::vector<T>(cols + 1, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
    tab[i][n + i] = T(1);
    tab[i][cols] = b[i];
  }
  // reduced costs: obj[j] = c_j - z_j; optimal when all <= 0
  std::vector<T> obj(cols + 1, T(0));
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    T best_ratio{0};
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      T ratio = tab[i][cols] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw ParameterError("packing LP is unbounded");
    std::vector<T>& prow = tab[leave];
    const T pivot = prow[enter];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols; ++j) {
      if (prow[j] != 0) {
        prow[j] /= pivot;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const T factor = tab[i][enter];
      for (std::size_t j : nz) tab[i][j] -= factor * prow[j];
    }
    if (obj[enter] != 0) {
      const T factor = obj[enter];
      for (std::size_t j : nz) obj[j] -= factor * prow[j];
    }
    basis[leave] = enter;
  }

  PackingLpResult<T> out;
  out.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.x[basis[i]] = tab[i][cols];
  }
  out.value = -obj[cols];
  out.y.assign(m, T(0));
  for (std::size_t i = 0; i < m; ++i) out.y[i] = -obj[n + i];
  return out;
}

}  // namespace bd
