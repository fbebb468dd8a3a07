#include "trapnoise/angular.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

#include "trapnoise/constants.hpp"

namespace trapnoise::angular {

namespace {

using BigInt = boost::multiprecision::cpp_int;

struct BigRational {
  BigInt num{0};
  BigInt den{1};

  void add(const BigRational& o) {
    num = num * o.den + o.num * den;
    den = den * o.den;
  }
  BigRational times(const BigRational& o) const {
    return {num * o.num, den * o.den};
  }
};

// conversion for non-negative rationals; shifts numerator and denominator
// down together when either would overflow a double (large spins)
double to_double(BigRational r) {
  if (r.num == 0) return 0.0;
  const long nb = static_cast<long>(boost::multiprecision::msb(r.num));
  const long db = static_cast<long>(boost::multiprecision::msb(r.den));
  const long excess = std::max(nb, db) - 900;
  if (excess > 0) {
    const long shift = std::min({excess, nb - 64, db - 64});
    if (shift > 0) {
      r.num >>= shift;
      r.den >>= shift;
    }
  }
  return r.num.convert_to<double>() / r.den.convert_to<double>();
}

BigInt factorial(long n) {
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// doubled representation keeps half-integers exact
long twice(double x, const char* what) {
  const double t = 2.0 * x;
  const double r = std::nearbyint(t);
  if (std::abs(t - r) > 1e-9) {
    throw std::domain_error(std::string(what) + ": not a half-integer");
  }
  return static_cast<long>(r);
}

bool magnetic_number_valid(long j2, long m2) {
  return std::abs(m2) <= j2 && (j2 - m2) % 2 == 0;
}

double ladder_up(double s, double m) {  // <m+1| S_+ |m>
  return std::sqrt(s * (s + 1.0) - m * (m + 1.0));
}

double ladder_down(double s, double m) {  // <m-1| S_- |m>
  return std::sqrt(s * (s + 1.0) - m * (m - 1.0));
}

// <m_f| S_alpha |m_i> with quantization along z.
std::complex<double> bare_spin_element(double s, long mf2, long mi2, Axis axis) {
  const double mi = 0.5 * mi2;
  switch (axis) {
    case Axis::x:
      if (mf2 == mi2 + 2) return {0.5 * ladder_up(s, mi), 0.0};
      if (mf2 == mi2 - 2) return {0.5 * ladder_down(s, mi), 0.0};
      return {0.0, 0.0};
    case Axis::y:
      if (mf2 == mi2 + 2) return {0.0, -0.5 * ladder_up(s, mi)};
      if (mf2 == mi2 - 2) return {0.0, 0.5 * ladder_down(s, mi)};
      return {0.0, 0.0};
    case Axis::z:
      if (mf2 == mi2) return {mi, 0.0};
      return {0.0, 0.0};
  }
  return {0.0, 0.0};
}

}  // namespace

SpinSystem::SpinSystem(double s, double i, double g)
    : spin_s(s), spin_i(i), g_s(g) {
  const long s2 = twice(s, "SpinSystem S");
  const long i2 = twice(i, "SpinSystem I");
  if (s2 < 1) throw std::invalid_argument("SpinSystem: S must be >= 1/2");
  if (i2 < 0) throw std::invalid_argument("SpinSystem: I must be >= 0");
  if (!(g > 0.0)) throw std::invalid_argument("SpinSystem: g_s must be > 0");
}

std::vector<double> SpinSystem::f_values() const {
  std::vector<double> fs;
  const long lo = std::abs(twice(spin_s, "S") - twice(spin_i, "I"));
  const long hi = twice(spin_s, "S") + twice(spin_i, "I");
  for (long f2 = lo; f2 <= hi; f2 += 2) fs.push_back(0.5 * f2);
  return fs;
}

bool SpinSystem::valid_f(double f) const {
  const long f2 = twice(f, "F");
  const long lo = std::abs(twice(spin_s, "S") - twice(spin_i, "I"));
  const long hi = twice(spin_s, "S") + twice(spin_i, "I");
  return f2 >= lo && f2 <= hi && (f2 - hi) % 2 == 0;
}

std::vector<HyperfineLevel> SpinSystem::hyperfine_levels() const {
  std::vector<HyperfineLevel> levels;
  for (double f : f_values()) {
    const long f2 = twice(f, "F");
    for (long m2 = -f2; m2 <= f2; m2 += 2) {
      levels.push_back({f, 0.5 * m2});
    }
  }
  return levels;
}

double clebsch_gordan(double j1, double j2, double m1, double m2, double f,
                      double m) {
  const long j1t = twice(j1, "clebsch_gordan j1");
  const long j2t = twice(j2, "clebsch_gordan j2");
  const long m1t = twice(m1, "clebsch_gordan m1");
  const long m2t = twice(m2, "clebsch_gordan m2");
  const long ft = twice(f, "clebsch_gordan f");
  const long mt = twice(m, "clebsch_gordan m");

  if (j1t < 0 || j2t < 0 || ft < 0 || !magnetic_number_valid(j1t, m1t) ||
      !magnetic_number_valid(j2t, m2t)) {
    throw std::domain_error("clebsch_gordan: invalid quantum numbers");
  }
  if (ft < std::abs(j1t - j2t) || ft > j1t + j2t || (j1t + j2t - ft) % 2 != 0) {
    throw std::domain_error("clebsch_gordan: (j1, j2, f) violate the triangle rule");
  }
  // projection mismatch and |m| > f both couple to nothing
  if (m1t + m2t != mt) return 0.0;
  if (std::abs(mt) > ft) return 0.0;

  // factorial arguments, all guaranteed non-negative integers here
  const long a1 = (j1t + j2t - ft) / 2;
  const long a2 = (j1t - j2t + ft) / 2;
  const long a3 = (-j1t + j2t + ft) / 2;
  const long a4 = (j1t + j2t + ft) / 2 + 1;
  const long b1 = (ft + mt) / 2;
  const long b2 = (ft - mt) / 2;
  const long b3 = (j1t - m1t) / 2;
  const long b4 = (j1t + m1t) / 2;
  const long b5 = (j2t - m2t) / 2;
  const long b6 = (j2t + m2t) / 2;

  BigRational prefactor{BigInt(ft + 1) * factorial(a1) * factorial(a2) *
                            factorial(a3) * factorial(b1) * factorial(b2) *
                            factorial(b3) * factorial(b4) * factorial(b5) *
                            factorial(b6),
                        factorial(a4)};

  const long k_lo = std::max({0L, (j2t - ft - m1t) / 2, (j1t - ft + m2t) / 2});
  const long k_hi = std::min({a1, b3, b6});
  BigRational sum{0, 1};
  for (long k = k_lo; k <= k_hi; ++k) {
    BigInt den = factorial(k) * factorial(a1 - k) * factorial(b3 - k) *
                 factorial(b6 - k) * factorial((ft - j2t + m1t) / 2 + k) *
                 factorial((ft - j1t - m2t) / 2 + k);
    BigRational term{(k % 2 == 0) ? BigInt(1) : BigInt(-1), den};
    sum.add(term);
  }
  if (sum.num == 0) return 0.0;

  const BigRational csq = prefactor.times(sum.times(sum));
  const double magnitude = std::sqrt(to_double(csq));
  return sum.num < 0 ? -magnitude : magnitude;
}

std::complex<double> zeeman_matrix_element(double spin_s, double m_f, double m_i,
                                           Axis axis, double theta) {
  const long st = twice(spin_s, "zeeman_matrix_element S");
  const long mft = twice(m_f, "zeeman_matrix_element m_f");
  const long mit = twice(m_i, "zeeman_matrix_element m_i");
  if (st < 1 || !magnetic_number_valid(st, mft) ||
      !magnetic_number_valid(st, mit)) {
    throw std::domain_error("zeeman_matrix_element: invalid quantum numbers");
  }

  // trap-basis ladder elements; the lab components follow from rotating the
  // quantization axis by theta about y
  const std::complex<double> plus =
      mft == mit + 2 ? std::complex<double>(ladder_up(spin_s, m_i), 0.0)
                     : std::complex<double>(0.0, 0.0);
  const std::complex<double> minus =
      mft == mit - 2 ? std::complex<double>(ladder_down(spin_s, m_i), 0.0)
                     : std::complex<double>(0.0, 0.0);
  const std::complex<double> diag =
      mft == mit ? std::complex<double>(m_i, 0.0) : std::complex<double>(0.0, 0.0);

  switch (axis) {
    case Axis::x:
      return 0.5 * std::cos(theta) * (plus + minus) + std::sin(theta) * diag;
    case Axis::y:
      return std::complex<double>(0.0, 0.5) * (minus - plus);
    case Axis::z:
      return -0.5 * std::sin(theta) * (plus + minus) + std::cos(theta) * diag;
  }
  return {0.0, 0.0};
}

double hyperfine_matrix_element_sq(double spin_s, double spin_i, double f_f,
                                   double m_f, double f_i, double m_i,
                                   Axis axis) {
  const SpinSystem sys(spin_s, spin_i);  // validates S, I
  if (!sys.valid_f(f_f) || !sys.valid_f(f_i)) {
    throw std::domain_error("hyperfine_matrix_element_sq: F not in |S-I|..S+I");
  }
  const long ff2 = twice(f_f, "F_f");
  const long fi2 = twice(f_i, "F_i");
  const long mf2 = twice(m_f, "m_f");
  const long mi2 = twice(m_i, "m_i");
  if (!magnetic_number_valid(ff2, mf2) || !magnetic_number_valid(fi2, mi2)) {
    throw std::domain_error("hyperfine_matrix_element_sq: |m| > F");
  }

  const long s2 = twice(spin_s, "S");
  const long i2 = twice(spin_i, "I");
  std::complex<double> amp{0.0, 0.0};
  // the nuclear spin does not flip: m_I = m_f - m_S' = m_i - m_S
  for (long msf = -s2; msf <= s2; msf += 2) {
    for (long msi = -s2; msi <= s2; msi += 2) {
      const std::complex<double> elem =
          bare_spin_element(spin_s, msf, msi, axis);
      if (elem == std::complex<double>(0.0, 0.0)) continue;
      const long mI2 = mf2 - msf;
      if (mI2 != mi2 - msi || std::abs(mI2) > i2 || (i2 - mI2) % 2 != 0) continue;
      const double cf = clebsch_gordan(spin_s, spin_i, 0.5 * msf, 0.5 * mI2,
                                       f_f, m_f);
      const double ci = clebsch_gordan(spin_s, spin_i, 0.5 * msi, 0.5 * mI2,
                                       f_i, m_i);
      amp += cf * ci * elem;
    }
  }
  return std::norm(amp);
}

double hyperfine_matrix_element_sq_avg(double spin_s, double spin_i, double f_f,
                                       double f_i, Axis axis) {
  const long ff2 = twice(f_f, "F_f");
  const long fi2 = twice(f_i, "F_i");
  double total = 0.0;
  for (long mf2 = -ff2; mf2 <= ff2; mf2 += 2) {
    for (long mi2 = -fi2; mi2 <= fi2; mi2 += 2) {
      total += hyperfine_matrix_element_sq(spin_s, spin_i, f_f, 0.5 * mf2, f_i,
                                           0.5 * mi2, axis);
    }
  }
  return total / (fi2 + 1.0);
}

const std::vector<AtomPreset>& atom_presets() {
  static const std::vector<AtomPreset> presets = {
      {"rb85", 2.5, 2.0 * constants::pi * 3.04e9, 2.0, 3.0},
      {"cs133", 3.5, 2.0 * constants::pi * 9.193e9, 3.0, 4.0},
  };
  return presets;
}

std::optional<AtomPreset> find_atom_preset(std::string_view name) {
  for (const auto& a : atom_presets()) {
    if (a.name == name) return a;
  }
  return std::nullopt;
}

}  // namespace trapnoise::angular
