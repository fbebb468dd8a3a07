#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trapnoise {

/// Homogeneous half-space surface model: an Ohmic conductor with an optional
/// real static permittivity offset (1.0 for a pure conductor, 5.0 for glass).
struct Material {
  std::string name;
  double resistivity = 0.0;      // specific resistance, ohm m (> 0)
  double static_eps_real = 1.0;  // >= 1

  Material(std::string name_, double resistivity_, double static_eps_real_ = 1.0);
};

struct ThermalEnvironment {
  double temperature = 0.0;  // K, >= 0

  explicit ThermalEnvironment(double temperature_kelvin);
};

/// Relative dielectric function of the surface in the quasi-static regime,
/// eps_re + i/(eps0 rho |omega|), conjugated for omega < 0. Valid well below
/// the plasma/collision regime (<= ~10 GHz for the built-in presets).
std::complex<double> dielectric_function(const Material& m, double omega);

/// Field decay length inside the conductor, sqrt(2 rho / (mu0 |omega|)).
double skin_depth(const Material& m, double omega);

/// hbar*omega / (1 - exp(-hbar*omega/kB T)). Smooth across omega = 0, where it
/// equals kB*T; tends to hbar*omega (omega > 0) or 0 (omega < 0) as T -> 0.
/// This is the factor that turns the high-temperature spectra into properly
/// Bose-weighted ones at signed frequency.
double thermal_energy(const ThermalEnvironment& env, double omega);

/// Free-space blackbody electric field spectral density at signed angular
/// frequency, in (V/m)^2 s.
double blackbody_electric_spectrum(const ThermalEnvironment& env, double omega);

/// Mean thermal occupation 1/(exp(hbar w/kB T)-1); requires omega > 0.
double thermal_occupation(const ThermalEnvironment& env, double omega);

/// Fluctuation-dissipation conversion. `im_green` is Im G evaluated at |omega|;
/// returns 2 hbar (nbar+1) Im G for omega > 0 and 2 hbar nbar Im G for omega < 0.
double fdt_spectrum(double im_green, const ThermalEnvironment& env, double omega);

const std::vector<Material>& material_presets();
std::optional<Material> find_material_preset(std::string_view name);

}  // namespace trapnoise
