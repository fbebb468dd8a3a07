#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "trapnoise/material.hpp"
#include "trapnoise/quadrature.hpp"

namespace trapnoise {

struct SurfaceGeometry {
  double distance = 0.0;  // trap center height above the surface, m (> 0)

  explicit SurfaceGeometry(double z);
};

enum class EvaluationMethod {
  exact_quadrature,
  asymptotic_interpolation,
  perfect_conductor,
};

enum class MethodPolicy { automatic, exact, asymptotic };

enum class SpectrumKind { electric, magnetic, force_gradient_zz };

const char* to_string(EvaluationMethod m);

/// Dimensionless near-field tensor (xx = yy = parallel, zz = perpendicular).
struct FieldTensor {
  double parallel = 0.0;
  double perpendicular = 0.0;
  double parallel_rel_error = 0.0;
  double perpendicular_rel_error = 0.0;
  bool quasistatic_warning = false;  // interpolation used at kz >= 0.1
};

/// Thrown when the adaptive quadrature exhausts its budget; carries the
/// partial estimate instead of silently returning it.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, FieldTensor partial)
      : std::runtime_error(what), partial_(partial) {}
  const FieldTensor& partial() const { return partial_; }

 private:
  FieldTensor partial_;
};

/// Vertical wave-vector factor: sqrt(1-u^2) on the propagating branch,
/// i*sqrt(u^2-1) on the evanescent branch.
std::complex<double> v_of_u(double u);

// Fresnel coefficients of the half-space for p- and s-polarization, with the
// transmitted-wave branch Im sqrt(eps - u^2) >= 0. Evaluated in a shifted form
// that stays accurate when the reflection coefficient is exponentially close
// to +-1 (good conductors deep in the evanescent range).
std::complex<double> fresnel_rp(double u, std::complex<double> eps);
std::complex<double> fresnel_rs(double u, std::complex<double> eps);

/// Electric-field tensor by adaptive quadrature of the half-space integrals.
/// Requires kz > 0 and Im eps > 0 (lossless surfaces are rejected; use
/// g_perfect_conductor for the ideal-conductor limit).
FieldTensor g_exact(double kz, std::complex<double> eps,
                    const quadrature::Options& opts = {});

/// Quasi-static interpolation between the image regime (z << delta) and the
/// skin-effect regime (delta << z << wavelength). Conductor formula; assumes
/// |eps| >> 1.
FieldTensor g_asymptotic(double kz, double z_over_delta);

/// Closed forms for the ideal conductor (damped oscillations in kz).
FieldTensor g_perfect_conductor(double kz);

/// Magnetic-field tensor: same integrals with the polarizations exchanged.
FieldTensor h_exact(double kz, std::complex<double> eps,
                    const quadrature::Options& opts = {});
FieldTensor h_asymptotic(double kz, double z_over_delta, double k_delta);

struct SpectrumOptions {
  MethodPolicy method = MethodPolicy::automatic;
  bool include_blackbody = false;  // add the free-space term to both components
  quadrature::Options quad;
};

struct DiagonalSpectrumTensor {
  double parallel = 0.0;       // xx = yy component
  double perpendicular = 0.0;  // zz component
  double frequency = 0.0;      // signed angular frequency, rad/s
  SpectrumKind kind = SpectrumKind::electric;
  EvaluationMethod method = EvaluationMethod::asymptotic_interpolation;
  double rel_error = 0.0;
};

/// Electric field noise spectrum above the surface, (V/m)^2 s. The heating
/// side is omega < 0; the spectrum carries the proper Bose weight at signed
/// frequency and reduces to the familiar high-temperature form
/// kB T rho/(4 pi z^3) * (s_ij + delta_ij z/delta) for hbar|omega| << kB T.
DiagonalSpectrumTensor electric_nearfield_spectrum(const Material& m,
                                                   const ThermalEnvironment& env,
                                                   const SurfaceGeometry& geom,
                                                   double omega,
                                                   const SpectrumOptions& opts = {});

/// Magnetic field noise spectrum, T^2 s.
DiagonalSpectrumTensor magnetic_nearfield_spectrum(const Material& m,
                                                   const ThermalEnvironment& env,
                                                   const SurfaceGeometry& geom,
                                                   double omega,
                                                   const SpectrumOptions& opts = {});

/// zz component of the magnetic force-gradient noise spectrum for a trap axis
/// perpendicular to the surface, N^2 s. mu_sq_expect / mu3_sq_expect are the
/// initial-state expectations of the squared magnetic moment and of its z
/// component, (J/T)^2. Interpolation formula (no quadrature route exists for
/// the vertically differentiated correlation).
DiagonalSpectrumTensor force_gradient_spectrum_zz(const Material& m,
                                                  const ThermalEnvironment& env,
                                                  const SurfaceGeometry& geom,
                                                  double omega, double mu_sq_expect,
                                                  double mu3_sq_expect);

/// Free-space counterpart of force_gradient_spectrum_zz, obtained from the
/// curvature of the blackbody magnetic coherence function. Tiny at trap
/// frequencies; kept for completeness checks.
double blackbody_force_gradient_zz(const ThermalEnvironment& env, double omega,
                                   double mu_sq_expect, double mu3_sq_expect);

}  // namespace trapnoise
