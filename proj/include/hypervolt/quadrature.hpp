#ifndef HYPERVOLT_QUADRATURE_HPP
#define HYPERVOLT_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (7/15) quadrature over a list of
// breakpoints, for real- or complex-valued integrands.  Node and weight
// tables come from Boost.Math; the driver bisects the interval with the
// largest error estimate until the summed estimate meets the tolerance.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace hypervolt::quad {

struct Tolerance {
  double rel = 1e-12;
  double abs = 0.0;
  std::size_t max_intervals = 4000;
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  bool converged = false;
  std::size_t intervals = 0;
};

namespace detail {

template <class T>
struct Piece {
  double a, b;
  T value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class T, class F>
Piece<T> kronrod15(F& f, double a, double b) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  using std::abs;
  const auto& x = gk::abscissa();
  const auto& wk = gk::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  // x[0] is the centre; Gauss nodes are the odd-indexed Kronrod nodes.
  const T fc = f(mid);
  T kronrod = fc * wk[0];
  T gauss = fc * wg[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const T fp = f(mid + half * x[i]);
    const T fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, static_cast<double>(abs(kronrod - gauss))};
}

}  // namespace detail

/// Integrate f over [points.front(), points.back()], never placing a node
/// on an interior breakpoint.
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> points, const Tolerance& tol = {}) {
  using std::abs;
  Result<T> out;
  if (points.size() < 2) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Piece<T>> heap;
  T total{};
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i + 1] > points[i])) continue;
    auto piece = detail::kronrod15<T>(f, points[i], points[i + 1]);
    total += piece.value;
    error += piece.error;
    heap.push(piece);
  }
  auto target = [&] { return std::max(tol.abs, tol.rel * static_cast<double>(abs(total))); };
  while (!heap.empty() && error > target() && heap.size() < tol.max_intervals) {
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    heap.pop();
    auto left = detail::kronrod15<T>(f, worst.a, mid);
    auto right = detail::kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift from incremental updates.
  total = T{};
  error = 0.0;
  out.intervals = heap.size();
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  out.converged = error <= target();
  return out;
}

template <class T, class F>
Result<T> integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
  const double pts[2] = {a, b};
  return integrate<T>(std::forward<F>(f), std::span<const double>(pts, 2), tol);
}

/// Sorted, de-duplicated breakpoints: the endpoints plus every interior
/// point of `extra` that lies strictly inside (a, b).
inline std::vector<double> breakpoints(double a, double b, std::span<const double> extra) {
  std::vector<double> pts{a};
  for (double x : extra) {
    if (x > a && x < b) pts.push_back(x);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Composite n-panel Gauss-Legendre (10 points per panel) on [a, b].
template <class T, class F>
T gauss_legendre(F&& f, double a, double b, int panels) {
  using gl = boost::math::quadrature::gauss<double, 10>;
  const auto& x = gl::abscissa();
  const auto& w = gl::weights();
  const double width = (b - a) / panels;
  T sum{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    T panel{};
    for (std::size_t i = 0; i < x.size(); ++i) {
      panel += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
    }
    sum += half * panel;
  }
  return sum;
}

}  // namespace hypervolt::quad

#endif  // HYPERVOLT_QUADRATURE_HPP
