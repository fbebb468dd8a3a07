#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace trapnoise::angular {

enum class Axis { x, y, z };

struct HyperfineLevel {
  double f = 0.0;
  double m = 0.0;
};

/// Electronic spin S coupled to nuclear spin I (L = 0 ground state; the
/// nuclear moment itself is neglected, only the level structure matters).
struct SpinSystem {
  double spin_s = 0.5;
  double spin_i = 0.0;
  double g_s = 2.0023;

  SpinSystem(double s, double i, double g = 2.0023);

  /// Hyperfine F values, |S-I| .. S+I.
  std::vector<double> f_values() const;
  bool valid_f(double f) const;
  /// All |F m> levels of the ground manifold, ordered by F then by m.
  std::vector<HyperfineLevel> hyperfine_levels() const;
};

/// <j1 m1; j2 m2 | f m> in the Condon-Shortley convention. Returns 0 when
/// m != m1 + m2; rejects non-half-integer or out-of-range quantum numbers.
/// Computed from the closed-form alternating sum in exact rational arithmetic,
/// so squared coefficients are exact up to one final rounding.
double clebsch_gordan(double j1, double j2, double m1, double m2, double f,
                      double m);

/// <m_f | S_alpha | m_i> in a quantization basis tilted by theta (about y)
/// from the surface-normal z axis, for a bare spin S.
std::complex<double> zeeman_matrix_element(double spin_s, double m_f, double m_i,
                                           Axis axis, double theta);

/// |<F_f m_f| S_alpha |F_i m_i>|^2 with quantization along z; the nuclear spin
/// is a spectator.
double hyperfine_matrix_element_sq(double spin_s, double spin_i, double f_f,
                                   double m_f, double f_i, double m_i, Axis axis);

/// Initial-m average, summed over final m: the effective squared element for a
/// transition between hyperfine manifolds.
double hyperfine_matrix_element_sq_avg(double spin_s, double spin_i, double f_f,
                                       double f_i, Axis axis);

struct AtomPreset {
  std::string name;
  double nuclear_spin = 0.0;
  double hyperfine_frequency = 0.0;  // angular, rad/s
  double f_initial = 0.0;
  double f_final = 0.0;
};

const std::vector<AtomPreset>& atom_presets();
std::optional<AtomPreset> find_atom_preset(std::string_view name);

}  // namespace trapnoise::angular
