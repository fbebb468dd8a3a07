#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "trapnoise/angular.hpp"
#include "trapnoise/material.hpp"
#include "trapnoise/spectra.hpp"

namespace trapnoise {

/// One trapped motional degree of freedom above the surface.
struct TrapConfig {
  double omega_trap = 0.0;             // rad/s, > 0
  double mass = 0.0;                   // kg, > 0
  std::array<double, 3> axis{0.0, 0.0, 1.0};  // unit vector
  double distance = 0.0;               // m, > 0
  double charge = 0.0;                 // C (ions); 0 for neutral particles

  TrapConfig(double omega, double mass_kg, std::array<double, 3> n, double z,
             double q = 0.0);
};

/// sqrt(hbar / (2 M Omega)), the rms ground-state extent.
double ground_state_size(const TrapConfig& trap);

struct RateResult {
  double rate = 0.0;  // 1/s, >= 0
  EvaluationMethod method = EvaluationMethod::asymptotic_interpolation;
  double rel_error = 0.0;
  /// S values and matrix elements that entered the product, for diagnostics.
  std::vector<std::pair<std::string, double>> components;
};

/// Golden-rule transition rate between adjacent trap levels driven by the
/// force noise tensor at signed frequency: (a/hbar)^2 sum_ij n_i n_j S_F^ij.
/// The provider must return a *force* spectrum in N^2 s.
double gamma_rate(const TrapConfig& trap,
                  const std::function<DiagonalSpectrumTensor(double)>& force_spectrum_at,
                  double omega);

/// Force-noise provider for a trapped charge: q^2 times the electric spectrum.
std::function<DiagonalSpectrumTensor(double)> ion_force_spectrum(
    const TrapConfig& trap, const Material& m, const ThermalEnvironment& env,
    const SpectrumOptions& opts = {});

/// Ground-state depletion rate of a trapped ion, evaluated at -Omega.
RateResult ion_heating_rate(const TrapConfig& trap, const Material& m,
                            const ThermalEnvironment& env,
                            const SpectrumOptions& opts = {});

/// Motional heating of a trapped spin via magnetic force-gradient noise.
/// Requires the trap axis perpendicular to the surface. m_initial selects the
/// trapped Zeeman state whose moment expectations enter the spectrum.
RateResult spin_heating_rate(const TrapConfig& trap, const Material& m,
                             const ThermalEnvironment& env,
                             const angular::SpinSystem& spin, double m_initial);

/// Free-space (blackbody) counterpart of spin_heating_rate.
double spin_heating_blackbody_rate(const TrapConfig& trap,
                                   const ThermalEnvironment& env,
                                   const angular::SpinSystem& spin,
                                   double m_initial);

/// Spin-flip loss rate in a magnetic trap with bias field tilted by theta
/// from the surface normal. Defaults to the m = -S -> -S+1 flip.
RateResult zeeman_loss_rate(const angular::SpinSystem& spin, double omega_larmor,
                            const Material& m, const ThermalEnvironment& env,
                            const SurfaceGeometry& geom, double theta,
                            const SpectrumOptions& opts = {});
RateResult zeeman_loss_rate(const angular::SpinSystem& spin, double omega_larmor,
                            const Material& m, const ThermalEnvironment& env,
                            const SurfaceGeometry& geom, double theta,
                            double m_initial, double m_final,
                            const SpectrumOptions& opts = {});
double zeeman_loss_blackbody_rate(const angular::SpinSystem& spin,
                                  double omega_larmor,
                                  const ThermalEnvironment& env, double theta);

/// Hyperfine-changing loss rate in an optical trap, with the squared matrix
/// element averaged over initial m and summed over final m. All transitions
/// are taken at the single splitting frequency omega_hf.
RateResult hyperfine_loss_rate(const angular::SpinSystem& spin, double omega_hf,
                               const Material& m, const ThermalEnvironment& env,
                               const SurfaceGeometry& geom, double f_i,
                               double f_f, const SpectrumOptions& opts = {});
double hyperfine_loss_blackbody_rate(const angular::SpinSystem& spin,
                                     double omega_hf,
                                     const ThermalEnvironment& env, double f_i,
                                     double f_f);

/// Decay rate of the 0-1 coherence, (gamma_plus + gamma_minus)/2.
double coherence_decay_rate(double gamma_plus, double gamma_minus);

/// Populations over a truncated oscillator ladder plus the tracked 0-1
/// coherence.
struct LadderState {
  std::vector<double> populations;
  std::complex<double> coherence_01{0.0, 0.0};
  bool positivity_clamped = false;

  explicit LadderState(std::vector<double> p,
                       std::complex<double> coherence = {0.0, 0.0});
  static LadderState ground(std::size_t levels);
  std::size_t levels() const { return populations.size(); }
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-step RK4 integration of the ladder rate equations
///   dp_n/dt = gamma_minus n p_{n-1} + gamma_plus (n+1) p_{n+1}
///             - (gamma_minus (n+1) + gamma_plus n) p_n
/// with no upward rate out of the top level, so the total population is
/// conserved exactly. The step is clamped to 0.01 / (N max(gamma+, gamma-)).
/// The tracked coherence decays with coherence_decay_rate (the rho_12 feeding
/// term is dropped). Throws TruncationError once the top level exceeds 1e-6.
LadderState evolve_populations(const LadderState& state, double gamma_plus,
                               double gamma_minus, double duration, double dt);

}  // namespace trapnoise
