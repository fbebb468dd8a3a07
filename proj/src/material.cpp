#include "trapnoise/material.hpp"

#include <cmath>
#include <stdexcept>

#include "trapnoise/constants.hpp"

namespace trapnoise {

namespace {
constexpr double kOhmCm = 1e-2;  // ohm cm -> ohm m
}

Material::Material(std::string name_, double resistivity_, double static_eps_real_)
    : name(std::move(name_)),
      resistivity(resistivity_),
      static_eps_real(static_eps_real_) {
  if (!(resistivity > 0.0)) {
    throw std::invalid_argument("Material: resistivity must be > 0 (the perfect "
                                "conductor is a separate evaluation path)");
  }
  if (!(static_eps_real >= 1.0)) {
    throw std::invalid_argument("Material: static_eps_real must be >= 1");
  }
}

ThermalEnvironment::ThermalEnvironment(double temperature_kelvin)
    : temperature(temperature_kelvin) {
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("ThermalEnvironment: temperature must be >= 0");
  }
}

std::complex<double> dielectric_function(const Material& m, double omega) {
  if (omega == 0.0) {
    throw std::domain_error("dielectric_function: omega = 0 (static pole diverges)");
  }
  const double im = 1.0 / (constants::epsilon_0 * m.resistivity * std::abs(omega));
  // reality of the time-domain response: eps(-w) = conj(eps(w))
  return {m.static_eps_real, omega > 0.0 ? im : -im};
}

double skin_depth(const Material& m, double omega) {
  if (omega == 0.0) {
    throw std::domain_error("skin_depth: omega = 0");
  }
  return std::sqrt(2.0 * m.resistivity / (constants::mu_0 * std::abs(omega)));
}

double thermal_energy(const ThermalEnvironment& env, double omega) {
  using constants::hbar;
  using constants::k_boltzmann;
  if (env.temperature == 0.0) {
    return omega > 0.0 ? hbar * omega : 0.0;
  }
  const double x = hbar * omega / (k_boltzmann * env.temperature);
  if (std::abs(x) < 1e-8) {
    // expm1 keeps the small-x limit kB*T exact to double precision
    return x == 0.0 ? k_boltzmann * env.temperature
                    : hbar * omega / -std::expm1(-x);
  }
  return hbar * omega / -std::expm1(-x);
}

double blackbody_electric_spectrum(const ThermalEnvironment& env, double omega) {
  using constants::epsilon_0;
  using constants::pi;
  using constants::speed_of_light;
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return omega * omega * thermal_energy(env, omega) / (3.0 * pi * epsilon_0 * c3);
}

double thermal_occupation(const ThermalEnvironment& env, double omega) {
  if (!(omega > 0.0)) {
    throw std::domain_error("thermal_occupation: omega must be > 0");
  }
  if (env.temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_boltzmann * env.temperature);
  return 1.0 / std::expm1(x);
}

double fdt_spectrum(double im_green, const ThermalEnvironment& env, double omega) {
  using constants::hbar;
  if (omega < 0.0) {
    if (env.temperature == 0.0) return 0.0;
    return 2.0 * hbar * thermal_occupation(env, -omega) * im_green;
  }
  if (env.temperature == 0.0) return 2.0 * hbar * im_green;
  const double x = hbar * omega / (constants::k_boltzmann * env.temperature);
  return 2.0 * hbar * im_green / -std::expm1(-x);
}

const std::vector<Material>& material_presets() {
  static const std::vector<Material> presets = {
      Material("copper", 1.7e-6 * kOhmCm, 1.0),
      Material("glass", 1e11 * kOhmCm, 5.0),
  };
  return presets;
}

std::optional<Material> find_material_preset(std::string_view name) {
  for (const auto& m : material_presets()) {
    if (m.name == name) return m;
  }
  return std::nullopt;
}

}  // namespace trapnoise
