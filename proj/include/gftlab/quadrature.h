#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace gftlab::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (nonnegative half).
struct Kronrod15 {
  static constexpr double xk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  bool converged = false;
  int intervals = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gk15_panel(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * Kronrod15::wk[7];
  T gauss = fc * Kronrod15::wg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * Kronrod15::xk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * Kronrod15::wk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * Kronrod15::wg[j / 2];
  }
  return {a, b, kronrod * half, magnitude((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// error falls below max(abs_tol, rel_tol * |value|) or the panel cap is hit.
/// Works for real and complex integrands. Panel selection is deterministic.
template <class T, class F>
Estimate<T> gauss_kronrod(F&& f, double a, double b, double rel_tol, double abs_tol,
                          int initial_panels = 1, int max_panels = 2000) {
  std::priority_queue<detail::Panel<T>> heap;
  T total{};
  double error = 0.0;
  const int n0 = std::max(1, initial_panels);
  const double width = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == n0) ? b : lo + width;
    auto p = detail::gk15_panel<T>(f, lo, hi);
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  Estimate<T> out;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * detail::magnitude(total));
    if (error <= target) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_panels || !detail::finite(total)) break;
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    auto left = detail::gk15_panel<T>(f, worst.a, mid);
    auto right = detail::gk15_panel<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the panels to shed accumulated update rounding.
  T resum{};
  double err = 0.0;
  out.intervals = static_cast<int>(heap.size());
  std::vector<detail::Panel<T>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : panels) {
    resum += p.value;
    err += p.error;
  }
  out.value = resum;
  out.error = err;
  return out;
}

}  // namespace gftlab::quad
