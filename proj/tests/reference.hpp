#pragma once

// Brute-force scans on plain arrays. They share no code with the library and
// serve as the independent side of the grid-level checks.

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace ref {

struct Raw {
  int n = 0;
  std::vector<double> v;  // v[j * (n + 1) + i]

  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * (n + 1) + i]; }
};

inline Raw raw_sample(const std::function<double(double, double)>& f, int n) {
  Raw g;
  g.n = n;
  g.v.resize(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      g.v[static_cast<std::size_t>(j) * (n + 1) + i] =
          f(i == n ? 1.0 : static_cast<double>(i) / n, j == n ? 1.0 : static_cast<double>(j) / n);
  return g;
}

// value first, then i, then j
inline bool before(const Raw& g, int i, int j, int k, int l) {
  const double a = g.at(i, j), b = g.at(k, l);
  if (a != b) return a < b;
  return i != k ? i < k : j < l;
}

inline std::vector<std::pair<int, int>> circle_minima(const Raw& g, int r, bool maxima = false) {
  std::vector<std::pair<int, int>> out;
  for (int i = r; i <= g.n - r; ++i)
    for (int j = r; j <= g.n - r; ++j) {
      bool ok = true;
      for (int k = i - r; k <= i + r && ok; ++k)
        for (int l = j - r; l <= j + r && ok; ++l) {
          if (k == i && l == j) continue;
          ok = maxima ? before(g, k, l, i, j) : before(g, i, j, k, l);
        }
      if (ok) out.emplace_back(i, j);
    }
  return out;
}

inline std::vector<std::pair<int, int>> stationary(const Raw& g) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i < g.n; ++i)
    for (int j = 1; j < g.n; ++j) {
      auto pair_ok = [&](int i1, int j1, int i2, int j2) {
        const bool above = before(g, i1, j1, i, j) && before(g, i2, j2, i, j);
        const bool below = before(g, i, j, i1, j1) && before(g, i, j, i2, j2);
        return above || below;
      };
      if (pair_ok(i - 1, j, i + 1, j) && pair_ok(i, j - 1, i, j + 1)) out.emplace_back(i, j);
    }
  return out;
}

inline std::size_t tie_pairs(const Raw& g, double tol) {
  std::size_t count = 0;
  for (std::size_t p = 0; p < g.v.size(); ++p)
    for (std::size_t q = p + 1; q < g.v.size(); ++q)
      if (std::abs(g.v[p] - g.v[q]) <= tol) ++count;
  return count;
}

}  // namespace ref
