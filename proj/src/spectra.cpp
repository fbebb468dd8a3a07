#include "trapnoise/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "trapnoise/constants.hpp"

namespace trapnoise {

using std::complex;

SurfaceGeometry::SurfaceGeometry(double z) : distance(z) {
  if (!(distance > 0.0)) {
    throw std::invalid_argument("SurfaceGeometry: distance must be > 0");
  }
}

const char* to_string(EvaluationMethod m) {
  switch (m) {
    case EvaluationMethod::exact_quadrature: return "exact";
    case EvaluationMethod::asymptotic_interpolation: return "asymptotic";
    case EvaluationMethod::perfect_conductor: return "perfect_conductor";
  }
  return "unknown";
}

complex<double> v_of_u(double u) {
  if (u < 0.0) throw std::domain_error("v_of_u: u must be >= 0");
  if (u <= 1.0) return {std::sqrt((1.0 - u) * (1.0 + u)), 0.0};
  return {0.0, std::sqrt((u - 1.0) * (u + 1.0))};
}

namespace {

// sqrt(eps - u^2) on the decaying-transmission branch. For Im eps > 0 the
// principal branch already satisfies Im >= 0.
inline complex<double> transmitted_root(double u, complex<double> eps) {
  return std::sqrt(eps - u * u);
}

// r_p = 1 - 2 s / (eps v + s): identical to (eps v - s)/(eps v + s) but the
// small deviation from +1 is formed from small quantities, which is what the
// evanescent-branch integrands actually consume.
inline complex<double> rp_impl(complex<double> v, double u, complex<double> eps) {
  const complex<double> s = transmitted_root(u, eps);
  return 1.0 - 2.0 * s / (eps * v + s);
}

// r_s = -1 + 2 v / (v + s), same reasoning around -1.
inline complex<double> rs_impl(complex<double> v, double u, complex<double> eps) {
  const complex<double> s = transmitted_root(u, eps);
  return -1.0 + 2.0 * v / (v + s);
}

struct BranchIntegrals {
  double parallel = 0.0;
  double perpendicular = 0.0;
  double parallel_abs_err = 0.0;
  double perpendicular_abs_err = 0.0;
  bool converged = true;
  int subdivisions = 0;
};

// Propagating branch 0 <= u <= 1, substituted with v = sqrt(1-u^2) so the
// 1/v endpoint singularity cancels; the surviving integrand is analytic.
//   parallel:      Re e^{2i kz v} (r_a(u) - v^2 r_b(u))
//   perpendicular: Re (1 - v^2) e^{2i kz v} r_b(u)
// where (r_a, r_b) = (r_s, r_p) for the electric tensor and swapped for the
// magnetic one.
template <class RA, class RB>
BranchIntegrals propagating_branch(double kz, RA&& ra, RB&& rb,
                                   const quadrature::Options& opts) {
  auto fpar = [&](double v) {
    const double u = std::sqrt(std::max(0.0, (1.0 - v) * (1.0 + v)));
    const complex<double> vc(v, 0.0);
    const complex<double> phase = std::polar(1.0, 2.0 * kz * v);
    return std::real(phase * (ra(vc, u) - v * v * rb(vc, u)));
  };
  auto fperp = [&](double v) {
    const double u = std::sqrt(std::max(0.0, (1.0 - v) * (1.0 + v)));
    const complex<double> vc(v, 0.0);
    const complex<double> phase = std::polar(1.0, 2.0 * kz * v);
    return (1.0 - v * v) * std::real(phase * rb(vc, u));
  };

  BranchIntegrals out;
  auto rp_ = quadrature::integrate(fpar, 0.0, 1.0, opts);
  auto rq_ = quadrature::integrate(fperp, 0.0, 1.0, opts);
  out.parallel = rp_.value;
  out.perpendicular = rq_.value;
  out.parallel_abs_err = rp_.error_estimate;
  out.perpendicular_abs_err = rq_.error_estimate;
  out.converged = rp_.converged && rq_.converged;
  out.subdivisions = rp_.subdivisions + rq_.subdivisions;
  return out;
}

// Evanescent branch u > 1, substituted with w = sqrt(u^2-1) which turns the
// measure into dw and the phase into a decaying exponential. Taking the real
// part of the integral leaves only the imaginary parts of the coefficients:
//   parallel:      e^{-2 kz w} (Im r_a + w^2 Im r_b)
//   perpendicular: e^{-2 kz w} (1 + w^2) Im r_b
// The tail is truncated at w_max = max(10, 30/(2 kz)); beyond that the
// exponential suppression is below 1e-13 of the integral. When the range is
// wide the [1, w_max] part is integrated in log space, where the Fresnel
// crossover at u ~ sqrt|eps| and the exponential cutoff are gentle features.
template <class RA, class RB>
BranchIntegrals evanescent_branch(double kz, RA&& ra, RB&& rb,
                                  const quadrature::Options& opts) {
  const double w_max = std::max(10.0, 30.0 / (2.0 * kz));

  auto ipar = [&](double w) {
    const double u = std::sqrt(1.0 + w * w);
    const complex<double> vc(0.0, w);
    return std::exp(-2.0 * kz * w) *
           (std::imag(ra(vc, u)) + w * w * std::imag(rb(vc, u)));
  };
  auto iperp = [&](double w) {
    const double u = std::sqrt(1.0 + w * w);
    const complex<double> vc(0.0, w);
    return std::exp(-2.0 * kz * w) * (1.0 + w * w) * std::imag(rb(vc, u));
  };

  BranchIntegrals out;
  auto accumulate = [&](auto&& f, double& value, double& abs_err) {
    quadrature::Result head = quadrature::integrate(f, 0.0, std::min(1.0, w_max), opts);
    value = head.value;
    abs_err = head.error_estimate;
    out.converged = out.converged && head.converged;
    out.subdivisions += head.subdivisions;
    if (w_max > 1.0) {
      auto log_f = [&](double s) {
        const double w = std::exp(s);
        return f(w) * w;
      };
      quadrature::Result tail =
          quadrature::integrate(log_f, 0.0, std::log(w_max), opts);
      value += tail.value;
      abs_err += tail.error_estimate;
      out.converged = out.converged && tail.converged;
      out.subdivisions += tail.subdivisions;
    }
  };

  accumulate(ipar, out.parallel, out.parallel_abs_err);
  accumulate(iperp, out.perpendicular, out.perpendicular_abs_err);
  return out;
}

template <bool SwapPolarizations>
FieldTensor exact_tensor(double kz, complex<double> eps,
                         const quadrature::Options& opts, const char* label) {
  if (!(kz > 0.0)) throw std::domain_error("exact tensor: kz must be > 0");
  if (!(eps.imag() > 0.0)) {
    throw std::domain_error(
        "exact tensor: Im eps must be > 0 (lossless surfaces are not "
        "supported; use the perfect-conductor closed form instead)");
  }

  // r_a multiplies the plain term, r_b the (u^2 - 1) / u^3 terms.
  auto ra = [eps](complex<double> v, double u) {
    if constexpr (SwapPolarizations) return rp_impl(v, u, eps);
    else return rs_impl(v, u, eps);
  };
  auto rb = [eps](complex<double> v, double u) {
    if constexpr (SwapPolarizations) return rs_impl(v, u, eps);
    else return rp_impl(v, u, eps);
  };

  const BranchIntegrals prop = propagating_branch(kz, ra, rb, opts);
  const BranchIntegrals evan = evanescent_branch(kz, ra, rb, opts);

  FieldTensor t;
  t.parallel = 0.75 * (prop.parallel + evan.parallel);
  t.perpendicular = 1.5 * (prop.perpendicular + evan.perpendicular);
  const double par_err = 0.75 * (prop.parallel_abs_err + evan.parallel_abs_err);
  const double perp_err =
      1.5 * (prop.perpendicular_abs_err + evan.perpendicular_abs_err);
  t.parallel_rel_error = par_err / std::max(std::abs(t.parallel), 1e-300);
  t.perpendicular_rel_error =
      perp_err / std::max(std::abs(t.perpendicular), 1e-300);

  if (!prop.converged || !evan.converged) {
    throw QuadratureError(std::string(label) +
                              ": quadrature budget exhausted before reaching "
                              "the requested tolerance",
                          t);
  }
  return t;
}

}  // namespace

complex<double> fresnel_rp(double u, complex<double> eps) {
  if (u < 0.0) throw std::domain_error("fresnel_rp: u must be >= 0");
  return rp_impl(v_of_u(u), u, eps);
}

complex<double> fresnel_rs(double u, complex<double> eps) {
  if (u < 0.0) throw std::domain_error("fresnel_rs: u must be >= 0");
  return rs_impl(v_of_u(u), u, eps);
}

FieldTensor g_exact(double kz, complex<double> eps,
                    const quadrature::Options& opts) {
  return exact_tensor<false>(kz, eps, opts, "g_exact");
}

FieldTensor h_exact(double kz, complex<double> eps,
                    const quadrature::Options& opts) {
  return exact_tensor<true>(kz, eps, opts, "h_exact");
}

FieldTensor g_asymptotic(double kz, double z_over_delta) {
  if (!(kz > 0.0)) throw std::domain_error("g_asymptotic: kz must be > 0");
  if (!(z_over_delta > 0.0)) {
    throw std::domain_error("g_asymptotic: z/delta must be > 0");
  }
  // g_ij = 3 delta^2/(8 k z^3) (s_ij + delta_ij z/delta),
  // s_par = 1/2, s_perp = 1, written in terms of kz and z/delta.
  const double scale = 3.0 / (8.0 * kz * z_over_delta * z_over_delta);
  FieldTensor t;
  t.parallel = scale * (0.5 + z_over_delta);
  t.perpendicular = scale * (1.0 + z_over_delta);
  t.quasistatic_warning = kz >= 0.1;
  return t;
}

FieldTensor g_perfect_conductor(double kz) {
  if (!(kz > 0.0)) throw std::domain_error("g_perfect_conductor: kz must be > 0");
  const double x = 2.0 * kz;
  FieldTensor t;
  if (x < 0.1) {
    // series around x = 0 avoids the cancellation between the 1/x^2 terms
    const double x2 = x * x;
    t.parallel = -1.0 + x2 / 5.0 - 3.0 * x2 * x2 / 280.0;
    t.perpendicular = 1.0 - x2 / 10.0 + x2 * x2 / 280.0;
    return t;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  t.parallel = 1.5 * (s / (x * x * x) - c / (x * x) - s / x);
  t.perpendicular = 3.0 * (s / (x * x * x) - c / (x * x));
  return t;
}

FieldTensor h_asymptotic(double kz, double z_over_delta, double k_delta) {
  if (!(kz > 0.0)) throw std::domain_error("h_asymptotic: kz must be > 0");
  if (!(z_over_delta > 0.0) || !(k_delta > 0.0)) {
    throw std::domain_error("h_asymptotic: z/delta and k*delta must be > 0");
  }
  // h_ij = 3 s_ij/(8 k^3 delta^2 z) / (1 + 2 z^3/(3 delta^3))
  const double x3 = z_over_delta * z_over_delta * z_over_delta;
  const double scale =
      3.0 / (8.0 * k_delta * k_delta * kz) / (1.0 + 2.0 * x3 / 3.0);
  FieldTensor t;
  t.parallel = 0.5 * scale;
  t.perpendicular = scale;
  t.quasistatic_warning = kz >= 0.1;
  return t;
}

namespace {

EvaluationMethod pick_method(MethodPolicy policy, double kz,
                             complex<double> eps) {
  switch (policy) {
    case MethodPolicy::exact: return EvaluationMethod::exact_quadrature;
    case MethodPolicy::asymptotic:
      return EvaluationMethod::asymptotic_interpolation;
    case MethodPolicy::automatic: break;
  }
  // deep quasi-static + good conductor: the interpolation is accurate and
  // cheap; otherwise integrate
  if (kz < 1e-3 && std::abs(eps) > 1e2) {
    return EvaluationMethod::asymptotic_interpolation;
  }
  return EvaluationMethod::exact_quadrature;
}

DiagonalSpectrumTensor assemble(const Material& m, const ThermalEnvironment& env,
                                const SurfaceGeometry& geom, double omega,
                                const SpectrumOptions& opts, SpectrumKind kind) {
  if (omega == 0.0) {
    throw std::domain_error("nearfield spectrum: omega = 0");
  }
  const double k = std::abs(omega) / constants::speed_of_light;
  const double kz = k * geom.distance;
  const complex<double> eps = dielectric_function(m, std::abs(omega));
  const double delta = skin_depth(m, std::abs(omega));

  DiagonalSpectrumTensor s;
  s.frequency = omega;
  s.kind = kind;
  s.method = pick_method(opts.method, kz, eps);

  FieldTensor t;
  if (s.method == EvaluationMethod::exact_quadrature) {
    t = kind == SpectrumKind::electric ? g_exact(kz, eps, opts.quad)
                                       : h_exact(kz, eps, opts.quad);
  } else if (kind == SpectrumKind::electric) {
    t = g_asymptotic(kz, geom.distance / delta);
  } else {
    t = h_asymptotic(kz, geom.distance / delta, k * delta);
  }

  double prefactor = blackbody_electric_spectrum(env, omega);
  if (kind == SpectrumKind::magnetic) {
    prefactor /= constants::speed_of_light * constants::speed_of_light;
  }
  const double bb = opts.include_blackbody ? 1.0 : 0.0;
  s.parallel = prefactor * (t.parallel + bb);
  s.perpendicular = prefactor * (t.perpendicular + bb);
  s.rel_error = std::max(t.parallel_rel_error, t.perpendicular_rel_error);
  return s;
}

}  // namespace

DiagonalSpectrumTensor electric_nearfield_spectrum(const Material& m,
                                                   const ThermalEnvironment& env,
                                                   const SurfaceGeometry& geom,
                                                   double omega,
                                                   const SpectrumOptions& opts) {
  return assemble(m, env, geom, omega, opts, SpectrumKind::electric);
}

DiagonalSpectrumTensor magnetic_nearfield_spectrum(const Material& m,
                                                   const ThermalEnvironment& env,
                                                   const SurfaceGeometry& geom,
                                                   double omega,
                                                   const SpectrumOptions& opts) {
  return assemble(m, env, geom, omega, opts, SpectrumKind::magnetic);
}

DiagonalSpectrumTensor force_gradient_spectrum_zz(const Material& m,
                                                  const ThermalEnvironment& env,
                                                  const SurfaceGeometry& geom,
                                                  double omega, double mu_sq_expect,
                                                  double mu3_sq_expect) {
  if (omega == 0.0) {
    throw std::domain_error("force_gradient_spectrum_zz: omega = 0");
  }
  if (mu_sq_expect < 0.0 || mu3_sq_expect < 0.0) {
    throw std::domain_error("force_gradient_spectrum_zz: moment expectations "
                            "must be >= 0");
  }
  const double z = geom.distance;
  const double delta = skin_depth(m, std::abs(omega));
  const double x3 = (z / delta) * (z / delta) * (z / delta);
  const double mu0 = constants::mu_0;

  DiagonalSpectrumTensor s;
  s.kind = SpectrumKind::force_gradient_zz;
  s.frequency = omega;
  s.method = EvaluationMethod::asymptotic_interpolation;
  s.perpendicular = mu0 * mu0 * thermal_energy(env, omega) *
                    (mu_sq_expect + mu3_sq_expect) /
                    (64.0 * constants::pi * m.resistivity * z * z * z) /
                    (1.0 + x3 / 15.0);
  return s;
}

double blackbody_force_gradient_zz(const ThermalEnvironment& env, double omega,
                                   double mu_sq_expect, double mu3_sq_expect) {
  // Curvature of the vacuum magnetic coherence tensor along the separation:
  //   -d^2/ds^2 Im H_xx|_0 = mu0 k^5 / (15 pi),  zz component half of that.
  // Weighted with the transverse/longitudinal moment split this gives
  //   2 Theta(omega) mu0 omega^4 / (pi c^5) [ (mu^2 - mu3^2)/15 + mu3^2/30 ].
  const double c = constants::speed_of_light;
  const double c5 = c * c * c * c * c;
  const double w4 = omega * omega * omega * omega;
  return 2.0 * thermal_energy(env, omega) * constants::mu_0 * w4 /
         (constants::pi * c5) *
         ((mu_sq_expect - mu3_sq_expect) / 15.0 + mu3_sq_expect / 30.0);
}

}  // namespace trapnoise
