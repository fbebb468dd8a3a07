#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

// Globally adaptive Gauss-Kronrod (7-15) quadrature on a finite interval.
// The worst interval (largest error estimate) is bisected until the summed
// error estimate meets max(abs_tol, rel_tol * |integral|) or the subdivision
// budget runs out. No workspace is shared between calls, so concurrent
// evaluation is safe.
namespace trapnoise::quadrature {

struct Options {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 10000;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  int subdivisions = 1;
  bool converged = false;
};

namespace detail {

// QUADPACK dqk15 nodes and weights (positive half; the rule is symmetric).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

// Embedded 7-point Gauss weights (nodes 1, 3, 5, 7 of the Kronrod set).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  double kronrod = 0.0;
  double gauss = 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    const double x = half * kKronrodNodes[i];
    const double sum = f(mid - x) + f(mid + x);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  const double f_mid = f(mid);
  kronrod += kKronrodWeights[7] * f_mid;
  gauss += kGaussWeights[3] * f_mid;

  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

template <class F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
  Result res;
  if (a == b) {
    res.converged = true;
    return res;
  }

  auto [val, err] = detail::gauss_kronrod_15(f, a, b);
  std::priority_queue<detail::Segment> segments;
  segments.push({a, b, val, err});
  double total = val;
  double total_err = err;
  int n = 1;

  auto tolerance = [&] {
    return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  };

  while (total_err > tolerance() && n < opts.max_subdivisions) {
    const detail::Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval no longer splittable in double precision
      segments.push(worst);
      break;
    }
    auto [v1, e1] = detail::gauss_kronrod_15(f, worst.a, mid);
    auto [v2, e2] = detail::gauss_kronrod_15(f, mid, worst.b);
    total += (v1 + v2) - worst.value;
    total_err += (e1 + e2) - worst.error;
    segments.push({worst.a, mid, v1, e1});
    segments.push({mid, worst.b, v2, e2});
    ++n;
  }

  res.value = total;
  res.error_estimate = total_err;
  res.subdivisions = n;
  res.converged = total_err <= tolerance();
  return res;
}

}  // namespace trapnoise::quadrature
