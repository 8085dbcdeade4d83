#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline std::size_t pairs(std::size_t n) { return n * (n - 1) / 2; }

/// μ(S) of a 2-additive capacity given flat coordinates.
inline double mu(std::size_t n, const Vec& c, std::uint32_t s) {
  double v = 0.0;
  std::size_t p = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (s >> i & 1u) v += c[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      if ((s >> i & 1u) && (s >> j & 1u)) v += c[p];
    }
  }
  return v;
}

/// Every (i, T) monotonicity condition, T a nonempty subset of G\{i}.
inline bool monotone_exhaustive(std::size_t n, const Vec& c, double tol = 1e-9) {
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] < -tol) return false;
    for (std::uint32_t t = 1; t < (1u << n); ++t) {
      if (t >> i & 1u) continue;
      double s = c[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (!(t >> j & 1u)) continue;
        const std::size_t a = std::min(i, j), b = std::max(i, j);
        std::size_t idx = n;
        for (std::size_t u = 0; u < a; ++u) idx += n - 1 - u;
        idx += b - a - 1;
        s += c[idx];
      }
      if (s < -tol) return false;
    }
  }
  return true;
}

/// Random valid 2-additive capacity: singles uniform, pairs of either sign,
/// rejected until monotone, then scaled to sum 1.
inline Vec random_capacity(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    Vec c(n + pairs(n));
    for (std::size_t i = 0; i < n; ++i) c[i] = u(gen);
    for (std::size_t p = n; p < c.size(); ++p) c[p] = (2.0 * u(gen) - 1.0) * 2.0 / static_cast<double>(n);
    if (!monotone_exhaustive(n, c, 0.0)) continue;
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    if (total <= 1e-3) continue;
    for (double& x : c) x /= total;
    return c;
  }
}

/// Choquet integral by definition: sort ascending, weight increments by μ
/// of the upper set.
inline double choquet_sorted(std::size_t n, const Vec& c, const Vec& x) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
  double prev = 0.0, total = 0.0;
  std::uint32_t upper = (1u << n) - 1;
  for (std::size_t r = 0; r < n; ++r) {
    total += (x[order[r]] - prev) * mu(n, c, upper);
    prev = x[order[r]];
    upper &= ~(1u << order[r]);
  }
  return total;
}

/// Solves A x = b (square) by Gaussian elimination with partial pivoting.
inline std::optional<Vec> solve_square(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (std::fabs(a[piv][col]) < 1e-10) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

/// Tiny LP "max c·x s.t. a_r·x (<=|>=|=) b_r, lo <= x <= hi" by enumerating
/// every basic point: choose n tight constraints among rows and bounds.
struct TinyLp {
  Vec c;
  std::vector<Vec> a;
  Vec b;
  std::vector<int> sense;   // -1: <=, 0: =, +1: >=
  Vec lo, hi;
};

inline std::optional<double> vertex_optimum(const TinyLp& lp, double tol = 1e-9) {
  const std::size_t n = lp.c.size();
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t r = 0; r < lp.a.size(); ++r) {
    rows.push_back(lp.a[r]);
    rhs.push_back(lp.b[r]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    rows.push_back(e);
    rhs.push_back(lp.lo[i]);
    rows.push_back(e);
    rhs.push_back(lp.hi[i]);
  }
  const std::size_t m = rows.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      std::vector<Vec> a;
      Vec b;
      for (auto p : pick) {
        a.push_back(rows[p]);
        b.push_back(rhs[p]);
      }
      const auto x = solve_square(a, b);
      if (!x) return;
      for (std::size_t r = 0; r < lp.a.size(); ++r) {
        const double lhs = std::inner_product(lp.a[r].begin(), lp.a[r].end(), x->begin(), 0.0);
        if (lp.sense[r] <= 0 && lhs > lp.b[r] + tol) return;
        if (lp.sense[r] >= 0 && lhs < lp.b[r] - tol) return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if ((*x)[i] < lp.lo[i] - tol || (*x)[i] > lp.hi[i] + tol) return;
      }
      const double v = std::inner_product(lp.c.begin(), lp.c.end(), x->begin(), 0.0);
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t p = start; p < m; ++p) {
      pick[depth] = p;
      rec(p + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Two-sample-free Kolmogorov–Smirnov statistic against U(lo, hi).
inline double ks_uniform(Vec xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace oracle
