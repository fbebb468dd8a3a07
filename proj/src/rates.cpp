#include "trapnoise/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "trapnoise/constants.hpp"

namespace trapnoise {

namespace {

constexpr double kAxisTolerance = 1e-9;

void require_perpendicular_axis(const TrapConfig& trap, const char* what) {
  if (std::abs(std::abs(trap.axis[2]) - 1.0) > kAxisTolerance) {
    throw std::invalid_argument(std::string(what) +
                                ": derived only for a trap axis perpendicular "
                                "to the surface (axis = e_z)");
  }
}

double sq(double x) { return x * x; }

// <mu^2> and <mu_z^2> in the Zeeman state |S, m>, (J/T)^2
std::pair<double, double> moment_expectations(const angular::SpinSystem& spin,
                                              double m_initial) {
  const double g_mu = spin.g_s * constants::bohr_magneton;
  const double s = spin.spin_s;
  if (std::abs(m_initial) > s + 1e-12) {
    throw std::domain_error("moment_expectations: |m| > S");
  }
  return {g_mu * g_mu * s * (s + 1.0), g_mu * g_mu * m_initial * m_initial};
}

}  // namespace

TrapConfig::TrapConfig(double omega, double mass_kg, std::array<double, 3> n,
                       double z, double q)
    : omega_trap(omega), mass(mass_kg), axis(n), distance(z), charge(q) {
  if (!(omega_trap > 0.0)) throw std::invalid_argument("TrapConfig: omega_trap must be > 0");
  if (!(mass > 0.0)) throw std::invalid_argument("TrapConfig: mass must be > 0");
  if (!(distance > 0.0)) throw std::invalid_argument("TrapConfig: distance must be > 0");
  const double norm = std::sqrt(sq(axis[0]) + sq(axis[1]) + sq(axis[2]));
  if (std::abs(norm - 1.0) > 1e-6) {
    throw std::invalid_argument("TrapConfig: axis must be a unit vector");
  }
  for (auto& c : axis) c /= norm;
}

double ground_state_size(const TrapConfig& trap) {
  return std::sqrt(constants::hbar / (2.0 * trap.mass * trap.omega_trap));
}

double gamma_rate(const TrapConfig& trap,
                  const std::function<DiagonalSpectrumTensor(double)>& force_spectrum_at,
                  double omega) {
  const DiagonalSpectrumTensor s = force_spectrum_at(omega);
  const double a = ground_state_size(trap);
  const double w_par = sq(trap.axis[0]) + sq(trap.axis[1]);
  const double w_perp = sq(trap.axis[2]);
  return (a * a / (constants::hbar * constants::hbar)) *
         (w_par * s.parallel + w_perp * s.perpendicular);
}

std::function<DiagonalSpectrumTensor(double)> ion_force_spectrum(
    const TrapConfig& trap, const Material& m, const ThermalEnvironment& env,
    const SpectrumOptions& opts) {
  if (trap.charge == 0.0) {
    throw std::invalid_argument("ion_force_spectrum: trap carries no charge");
  }
  const double q2 = sq(trap.charge);
  const SurfaceGeometry geom(trap.distance);
  return [q2, geom, m, env, opts](double omega) {
    DiagonalSpectrumTensor s =
        electric_nearfield_spectrum(m, env, geom, omega, opts);
    s.parallel *= q2;
    s.perpendicular *= q2;
    return s;
  };
}

RateResult ion_heating_rate(const TrapConfig& trap, const Material& m,
                            const ThermalEnvironment& env,
                            const SpectrumOptions& opts) {
  if (trap.charge == 0.0) {
    throw std::invalid_argument("ion_heating_rate: trap carries no charge");
  }
  const SurfaceGeometry geom(trap.distance);
  const DiagonalSpectrumTensor s =
      electric_nearfield_spectrum(m, env, geom, -trap.omega_trap, opts);
  const double a = ground_state_size(trap);
  const double q2 = sq(trap.charge);
  const double w_par = sq(trap.axis[0]) + sq(trap.axis[1]);
  const double w_perp = sq(trap.axis[2]);

  RateResult r;
  r.method = s.method;
  r.rel_error = s.rel_error;
  r.rate = (a * a / sq(constants::hbar)) * q2 *
           (w_par * s.parallel + w_perp * s.perpendicular);
  r.components = {{"S_E_parallel", s.parallel},
                  {"S_E_perpendicular", s.perpendicular},
                  {"ground_state_size", a}};
  return r;
}

RateResult spin_heating_rate(const TrapConfig& trap, const Material& m,
                             const ThermalEnvironment& env,
                             const angular::SpinSystem& spin, double m_initial) {
  require_perpendicular_axis(trap, "spin_heating_rate");
  const auto [mu_sq, mu3_sq] = moment_expectations(spin, m_initial);
  const SurfaceGeometry geom(trap.distance);
  const DiagonalSpectrumTensor s = force_gradient_spectrum_zz(
      m, env, geom, -trap.omega_trap, mu_sq, mu3_sq);

  RateResult r;
  r.method = s.method;
  r.rate = s.perpendicular / (constants::hbar * trap.mass * trap.omega_trap);
  r.components = {{"S_Fz_zz", s.perpendicular},
                  {"mu_sq", mu_sq},
                  {"mu3_sq", mu3_sq}};
  return r;
}

double spin_heating_blackbody_rate(const TrapConfig& trap,
                                   const ThermalEnvironment& env,
                                   const angular::SpinSystem& spin,
                                   double m_initial) {
  require_perpendicular_axis(trap, "spin_heating_blackbody_rate");
  const auto [mu_sq, mu3_sq] = moment_expectations(spin, m_initial);
  const double s =
      blackbody_force_gradient_zz(env, -trap.omega_trap, mu_sq, mu3_sq);
  return s / (constants::hbar * trap.mass * trap.omega_trap);
}

namespace {

// sum_alpha (S_B^{alpha alpha}/hbar^2) |<f| mu_alpha |i>|^2 from per-axis
// squared spin elements; xx and yy ride on the parallel component.
double assemble_flip_rate(const angular::SpinSystem& spin,
                          const DiagonalSpectrumTensor& s, double el_x_sq,
                          double el_y_sq, double el_z_sq) {
  const double g_mu = spin.g_s * constants::bohr_magneton;
  return (g_mu * g_mu / sq(constants::hbar)) *
         (s.parallel * (el_x_sq + el_y_sq) + s.perpendicular * el_z_sq);
}

}  // namespace

RateResult zeeman_loss_rate(const angular::SpinSystem& spin, double omega_larmor,
                            const Material& m, const ThermalEnvironment& env,
                            const SurfaceGeometry& geom, double theta,
                            const SpectrumOptions& opts) {
  return zeeman_loss_rate(spin, omega_larmor, m, env, geom, theta,
                          -spin.spin_s, -spin.spin_s + 1.0, opts);
}

RateResult zeeman_loss_rate(const angular::SpinSystem& spin, double omega_larmor,
                            const Material& m, const ThermalEnvironment& env,
                            const SurfaceGeometry& geom, double theta,
                            double m_initial, double m_final,
                            const SpectrumOptions& opts) {
  if (!(omega_larmor > 0.0)) {
    throw std::domain_error("zeeman_loss_rate: omega_larmor must be > 0");
  }
  SpectrumOptions with_bb = opts;
  with_bb.include_blackbody = true;
  const DiagonalSpectrumTensor s =
      magnetic_nearfield_spectrum(m, env, geom, -omega_larmor, with_bb);

  using angular::Axis;
  const double ex = std::norm(
      angular::zeeman_matrix_element(spin.spin_s, m_final, m_initial, Axis::x, theta));
  const double ey = std::norm(
      angular::zeeman_matrix_element(spin.spin_s, m_final, m_initial, Axis::y, theta));
  const double ez = std::norm(
      angular::zeeman_matrix_element(spin.spin_s, m_final, m_initial, Axis::z, theta));

  RateResult r;
  r.method = s.method;
  r.rel_error = s.rel_error;
  r.rate = assemble_flip_rate(spin, s, ex, ey, ez);
  r.components = {{"S_B_parallel", s.parallel},
                  {"S_B_perpendicular", s.perpendicular},
                  {"el_x_sq", ex},
                  {"el_y_sq", ey},
                  {"el_z_sq", ez}};
  return r;
}

double zeeman_loss_blackbody_rate(const angular::SpinSystem& spin,
                                  double omega_larmor,
                                  const ThermalEnvironment& env, double theta) {
  if (!(omega_larmor > 0.0)) {
    throw std::domain_error("zeeman_loss_blackbody_rate: omega_larmor must be > 0");
  }
  const double c = constants::speed_of_light;
  DiagonalSpectrumTensor s;
  s.kind = SpectrumKind::magnetic;
  s.frequency = -omega_larmor;
  s.parallel = s.perpendicular =
      blackbody_electric_spectrum(env, -omega_larmor) / (c * c);

  using angular::Axis;
  const double s_ = spin.spin_s;
  const double mi = -s_, mf = -s_ + 1.0;
  const double ex =
      std::norm(angular::zeeman_matrix_element(s_, mf, mi, Axis::x, theta));
  const double ey =
      std::norm(angular::zeeman_matrix_element(s_, mf, mi, Axis::y, theta));
  const double ez =
      std::norm(angular::zeeman_matrix_element(s_, mf, mi, Axis::z, theta));
  return assemble_flip_rate(spin, s, ex, ey, ez);
}

RateResult hyperfine_loss_rate(const angular::SpinSystem& spin, double omega_hf,
                               const Material& m, const ThermalEnvironment& env,
                               const SurfaceGeometry& geom, double f_i,
                               double f_f, const SpectrumOptions& opts) {
  if (!(omega_hf > 0.0)) {
    throw std::domain_error("hyperfine_loss_rate: omega_hf must be > 0");
  }
  SpectrumOptions with_bb = opts;
  with_bb.include_blackbody = true;
  const DiagonalSpectrumTensor s =
      magnetic_nearfield_spectrum(m, env, geom, -omega_hf, with_bb);

  using angular::Axis;
  const double ax = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::x);
  const double ay = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::y);
  const double az = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::z);

  RateResult r;
  r.method = s.method;
  r.rel_error = s.rel_error;
  r.rate = assemble_flip_rate(spin, s, ax, ay, az);
  r.components = {{"S_B_parallel", s.parallel},
                  {"S_B_perpendicular", s.perpendicular},
                  {"avg_x_sq", ax},
                  {"avg_y_sq", ay},
                  {"avg_z_sq", az}};
  return r;
}

double hyperfine_loss_blackbody_rate(const angular::SpinSystem& spin,
                                     double omega_hf,
                                     const ThermalEnvironment& env, double f_i,
                                     double f_f) {
  if (!(omega_hf > 0.0)) {
    throw std::domain_error("hyperfine_loss_blackbody_rate: omega_hf must be > 0");
  }
  const double c = constants::speed_of_light;
  DiagonalSpectrumTensor s;
  s.kind = SpectrumKind::magnetic;
  s.frequency = -omega_hf;
  s.parallel = s.perpendicular =
      blackbody_electric_spectrum(env, -omega_hf) / (c * c);

  using angular::Axis;
  const double ax = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::x);
  const double ay = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::y);
  const double az = angular::hyperfine_matrix_element_sq_avg(
      spin.spin_s, spin.spin_i, f_f, f_i, Axis::z);
  return assemble_flip_rate(spin, s, ax, ay, az);
}

double coherence_decay_rate(double gamma_plus, double gamma_minus) {
  if (gamma_plus < 0.0 || gamma_minus < 0.0) {
    throw std::domain_error("coherence_decay_rate: rates must be >= 0");
  }
  return 0.5 * (gamma_plus + gamma_minus);
}

LadderState::LadderState(std::vector<double> p, std::complex<double> coherence)
    : populations(std::move(p)), coherence_01(coherence) {
  if (populations.size() < 2) {
    throw std::invalid_argument("LadderState: need at least two levels");
  }
  double sum = 0.0;
  for (double v : populations) {
    if (v < 0.0) throw std::invalid_argument("LadderState: populations must be >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("LadderState: populations must sum to 1");
  }
}

LadderState LadderState::ground(std::size_t levels) {
  std::vector<double> p(levels, 0.0);
  p.at(0) = 1.0;
  return LadderState(std::move(p));
}

namespace {

constexpr double kTruncationThreshold = 1e-6;
constexpr double kNegativityTolerance = 1e-12;

// dp/dt for the truncated ladder; the top level has no upward loss so the
// column sums vanish and the total population is conserved identically.
void ladder_derivative(const std::vector<double>& p, double gp, double gm,
                       std::vector<double>& dp) {
  const std::size_t n_max = p.size() - 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    double d = 0.0;
    if (n > 0) d += gm * static_cast<double>(n) * p[n - 1];
    if (n < n_max) {
      d += gp * static_cast<double>(n + 1) * p[n + 1];
      d -= gm * static_cast<double>(n + 1) * p[n];
    }
    d -= gp * static_cast<double>(n) * p[n];
    dp[n] = d;
  }
}

}  // namespace

LadderState evolve_populations(const LadderState& state, double gamma_plus,
                               double gamma_minus, double duration, double dt) {
  if (gamma_plus < 0.0 || gamma_minus < 0.0) {
    throw std::domain_error("evolve_populations: rates must be >= 0");
  }
  if (!(duration >= 0.0) || !(dt > 0.0)) {
    throw std::domain_error("evolve_populations: need duration >= 0 and dt > 0");
  }

  LadderState out = state;
  const std::size_t levels = out.populations.size();
  const double gmax = std::max(gamma_plus, gamma_minus);
  if (gmax == 0.0 || duration == 0.0) return out;

  const double dt_bound = 0.01 / (gmax * static_cast<double>(levels));
  const double step = std::min(dt, dt_bound);
  const auto n_steps = static_cast<long long>(duration / step);
  const double remainder = duration - static_cast<double>(n_steps) * step;

  std::vector<double> k1(levels), k2(levels), k3(levels), k4(levels), tmp(levels);
  auto& p = out.populations;

  auto rk4_step = [&](double h) {
    ladder_derivative(p, gamma_plus, gamma_minus, k1);
    for (std::size_t i = 0; i < levels; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
    ladder_derivative(tmp, gamma_plus, gamma_minus, k2);
    for (std::size_t i = 0; i < levels; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
    ladder_derivative(tmp, gamma_plus, gamma_minus, k3);
    for (std::size_t i = 0; i < levels; ++i) tmp[i] = p[i] + h * k3[i];
    ladder_derivative(tmp, gamma_plus, gamma_minus, k4);
    for (std::size_t i = 0; i < levels; ++i) {
      p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      if (p[i] < 0.0) {
        if (p[i] < -kNegativityTolerance) out.positivity_clamped = true;
        p[i] = 0.0;
      }
    }
    if (p.back() >= kTruncationThreshold) {
      throw TruncationError(
          "evolve_populations: top-level population exceeded 1e-6; rerun with "
          "more ladder levels");
    }
  };

  for (long long i = 0; i < n_steps; ++i) rk4_step(step);
  if (remainder > 0.0) rk4_step(remainder);

  // with the rho_12 feeding term dropped the tracked coherence decays exactly
  out.coherence_01 = state.coherence_01 *
                     std::exp(-coherence_decay_rate(gamma_plus, gamma_minus) *
                              duration);
  return out;
}

}  // namespace trapnoise
