#pragma once

// Small numerical-integration toolkit used by the kernel evaluators and by the
// operator-table builders: adaptive Gauss-Kronrod (7/15) and fixed
// Gauss-Legendre rules.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace axivort::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Fn>
Result gk15(Fn&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kron += kWk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kron * h, std::abs((kron - gauss) * h), 1};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. Bisects the interval
/// with the largest error estimate until the summed estimate drops below
/// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
template <class Fn>
Result integrate(Fn&& f, double a, double b, double abs_tol, int max_intervals = 200,
                 double rel_tol = 0.0) {
  struct Piece {
    double a, b;
    Result r;
    bool operator<(const Piece& o) const { return r.abs_error < o.r.abs_error; }
  };
  if (a == b) return {};
  std::priority_queue<Piece> heap;
  Result first = detail::gk15(f, a, b);
  heap.push({a, b, first});
  double total = first.value;
  double err = first.abs_error;
  int count = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Result left = detail::gk15(f, worst.a, mid);
    Result right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.r.value;
    err += left.abs_error + right.abs_error - worst.r.abs_error;
    heap.push({worst.a, mid, left});
    heap.push({mid, worst.b, right});
    ++count;
  }
  // Re-sum to avoid drift from the running update.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().r.value;
    err += heap.top().r.abs_error;
    heap.pop();
  }
  return {total, err, count};
}

/// Sum of integrate() over consecutive breakpoints; the tolerance is shared
/// equally among the pieces.
template <class Fn>
Result integrate_pieces(Fn&& f, const std::vector<double>& breaks, double abs_tol,
                        int max_intervals = 200) {
  Result out;
  if (breaks.size() < 2) return out;
  const double tol = abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Result r = integrate(f, breaks[i], breaks[i + 1], tol, max_intervals);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.intervals += r.intervals;
  }
  return out;
}

/// Gauss-Legendre nodes and weights on [0, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Rule gauss_legendre_unit(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Chebyshev-like guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 0.5 * w;
  }
  // Ascending order on [0, 1].
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return rule.nodes[a] < rule.nodes[b]; });
  Rule sorted;
  for (int i : idx) {
    sorted.nodes.push_back(rule.nodes[i]);
    sorted.weights.push_back(rule.weights[i]);
  }
  return sorted;
}

}  // namespace axivort::quad
