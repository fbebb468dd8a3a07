#pragma once

#include <numbers>

// Physical constants, SI units (CODATA 2018; exact where the SI fixes them).
namespace trapnoise::constants {

inline constexpr double pi = std::numbers::pi;

inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double mu_0 = 4.0e-7 * pi;                  // N/A^2
inline constexpr double epsilon_0 =
    1.0 / (mu_0 * speed_of_light * speed_of_light);          // F/m
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double k_boltzmann = 1.380649e-23;          // J/K
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double bohr_magneton = 9.2740100783e-24;    // J/T
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

// free-electron g-factor, truncated as commonly quoted
inline constexpr double g_electron = 2.0023;

}  // namespace trapnoise::constants
