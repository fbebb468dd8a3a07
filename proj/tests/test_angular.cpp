#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "dense_angular_oracle.hpp"
#include "doctest.h"
#include "trapnoise/angular.hpp"
#include "trapnoise/constants.hpp"

using namespace trapnoise::angular;
namespace k = trapnoise::constants;
using std::complex;

namespace {

using oracle::build_coupled_basis;
using oracle::CoupledBasis;
using oracle::dense_hyperfine_element;
using oracle::dense_spin_element;
using oracle::spin_pairs_up_to;

}  // namespace

TEST_CASE("clebsch-gordan: pinned values") {
  // stretched state is unique
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, 0.5, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(clebsch_gordan(2.0, 1.5, 2.0, 1.5, 3.5, 3.5) == doctest::Approx(1.0));

  // two-spin-1/2 triplet and singlet
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1.0, 0.0) == doctest::Approx(r).epsilon(1e-14));
  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0.0, 0.0) == doctest::Approx(r).epsilon(1e-14));
  CHECK(clebsch_gordan(0.5, 0.5, -0.5, 0.5, 0.0, 0.0) == doctest::Approx(-r).epsilon(1e-14));

  // 1 (x) 1/2 from the standard tables
  CHECK(clebsch_gordan(1.0, 0.5, 1.0, -0.5, 1.5, 0.5) ==
        doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1.0, 0.5, 0.0, 0.5, 1.5, 0.5) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1.0, 0.5, 1.0, -0.5, 0.5, 0.5) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1.0, 0.5, 0.0, 0.5, 0.5, 0.5) ==
        doctest::Approx(-std::sqrt(1.0 / 3.0)).epsilon(1e-14));

  // Rb85-sized case, from an independent symbolic evaluation
  CHECK(clebsch_gordan(0.5, 2.5, 0.5, -0.5, 3.0, 0.0) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  CHECK(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1.0, 1.0) == 0.0);  // m mismatch
}

TEST_CASE("clebsch-gordan: large spins stay finite and unitary") {
  // factorial products here exceed the double range by far; the rational
  // arithmetic must scale before converting
  CHECK(clebsch_gordan(15.0, 15.0, 15.0, 15.0, 30.0, 30.0) == doctest::Approx(1.0));
  for (const auto& [m1, m2] : std::vector<std::pair<double, double>>{
           {3.0, -2.0}, {15.0, -15.0}, {0.0, 0.0}}) {
    double sum = 0.0;
    for (int f = 0; f <= 30; ++f) {
      const double c = clebsch_gordan(15.0, 15.0, m1, m2, f, m1 + m2);
      CHECK(std::isfinite(c));
      sum += c * c;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("clebsch-gordan: invalid quantum numbers are rejected") {
  CHECK_THROWS_AS(clebsch_gordan(0.5, 0.5, 1.5, -0.5, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(0.5, 0.5, 0.3, 0.2, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(0.5, 0.5, 0.5, 0.5, 3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(clebsch_gordan(0.5, 1.0, 0.5, 0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("clebsch-gordan: unitarity both ways") {
  for (const auto& [S, I] : spin_pairs_up_to(8)) {
    const int s2 = static_cast<int>(std::lround(2.0 * S));
    const int i2 = static_cast<int>(std::lround(2.0 * I));

    // fixed (m1, m2): sum over F of C^2 is 1
    for (int m1 = -s2; m1 <= s2; m1 += 2) {
      for (int m2 = -i2; m2 <= i2; m2 += 2) {
        double sum = 0.0;
        for (int f2 = std::abs(s2 - i2); f2 <= s2 + i2; f2 += 2) {
          const double c = clebsch_gordan(S, I, 0.5 * m1, 0.5 * m2, 0.5 * f2,
                                          0.5 * (m1 + m2));
          sum += c * c;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }

    // fixed (F, m): sum over (m1, m2) of C^2 is 1
    for (int f2 = std::abs(s2 - i2); f2 <= s2 + i2; f2 += 2) {
      for (int m2 = -f2; m2 <= f2; m2 += 2) {
        double sum = 0.0;
        for (int ms2 = -s2; ms2 <= s2; ms2 += 2) {
          const int mi2 = m2 - ms2;
          if (std::abs(mi2) > i2) continue;
          const double c =
              clebsch_gordan(S, I, 0.5 * ms2, 0.5 * mi2, 0.5 * f2, 0.5 * m2);
          sum += c * c;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("clebsch-gordan agrees with the dense diagonalization oracle") {
  for (const auto& [S, I] : spin_pairs_up_to(8)) {
    const CoupledBasis basis = build_coupled_basis(S, I);
    for (const auto& [key, coeffs] : basis.coeffs) {
      const auto& block = basis.blocks.at(key.second);
      for (std::size_t a = 0; a < block.size(); ++a) {
        const double c = clebsch_gordan(S, I, 0.5 * block[a].ms2,
                                        0.5 * block[a].mi2, 0.5 * key.first,
                                        0.5 * key.second);
        CHECK(c == doctest::Approx(coeffs[a]).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("zeeman matrix elements reproduce the tilted spin-1/2 triple") {
  for (double theta : {0.0, 0.25 * k::pi, 0.5 * k::pi}) {
    const auto ex = zeeman_matrix_element(0.5, 0.5, -0.5, Axis::x, theta);
    const auto ey = zeeman_matrix_element(0.5, 0.5, -0.5, Axis::y, theta);
    const auto ez = zeeman_matrix_element(0.5, 0.5, -0.5, Axis::z, theta);
    CHECK(ex.real() == doctest::Approx(0.5 * std::cos(theta)).epsilon(1e-15));
    CHECK(ex.imag() == 0.0);
    CHECK(ey.real() == 0.0);
    CHECK(ey.imag() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(ez.real() == doctest::Approx(-0.5 * std::sin(theta)).epsilon(1e-15));
    CHECK(ez.imag() == 0.0);
  }
}

TEST_CASE("zeeman matrix elements: theta independence of the flip strength") {
  for (double theta = 0.0; theta <= k::pi + 1e-9; theta += k::pi / 7.0) {
    double sum = 0.0;
    for (Axis a : {Axis::x, Axis::y, Axis::z}) {
      sum += std::norm(zeeman_matrix_element(0.5, 0.5, -0.5, a, theta));
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("zeeman matrix elements match a rotation-built oracle") {
  // adjoint rotation about y: S_x -> cos S_x + sin S_z, S_z -> cos S_z - sin S_x
  for (double S : {0.5, 1.0, 1.5, 2.0}) {
    const int s2 = static_cast<int>(std::lround(2.0 * S));
    for (double theta : {0.0, 0.3, 1.1, 2.7}) {
      for (int mf2 = -s2; mf2 <= s2; mf2 += 2) {
        for (int mi2 = -s2; mi2 <= s2; mi2 += 2) {
          const auto bare_x = dense_spin_element(S, mf2, mi2, Axis::x);
          const auto bare_y = dense_spin_element(S, mf2, mi2, Axis::y);
          const auto bare_z = dense_spin_element(S, mf2, mi2, Axis::z);
          const auto want_x = std::cos(theta) * bare_x + std::sin(theta) * bare_z;
          const auto want_z = std::cos(theta) * bare_z - std::sin(theta) * bare_x;
          const auto got_x =
              zeeman_matrix_element(S, 0.5 * mf2, 0.5 * mi2, Axis::x, theta);
          const auto got_y =
              zeeman_matrix_element(S, 0.5 * mf2, 0.5 * mi2, Axis::y, theta);
          const auto got_z =
              zeeman_matrix_element(S, 0.5 * mf2, 0.5 * mi2, Axis::z, theta);
          CHECK(std::abs(got_x - want_x) < 1e-14);
          CHECK(std::abs(got_y - bare_y) < 1e-14);
          CHECK(std::abs(got_z - want_z) < 1e-14);

          // hermiticity of the squared elements
          const auto rev =
              zeeman_matrix_element(S, 0.5 * mi2, 0.5 * mf2, Axis::x, theta);
          CHECK(std::norm(got_x) == doctest::Approx(std::norm(rev)).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("hyperfine elements: selection rules") {
  // S_z cannot change m
  CHECK(hyperfine_matrix_element_sq(0.5, 2.5, 3.0, 1.0, 2.0, 0.0, Axis::z) == 0.0);
  // ladder components cannot jump |dm| >= 2
  CHECK(hyperfine_matrix_element_sq(0.5, 2.5, 3.0, 2.0, 2.0, 0.0, Axis::x) == 0.0);
  CHECK(hyperfine_matrix_element_sq(0.5, 2.5, 3.0, -2.0, 2.0, 0.0, Axis::y) == 0.0);

  CHECK_THROWS_AS(hyperfine_matrix_element_sq(0.5, 2.5, 5.0, 0.0, 2.0, 0.0, Axis::x),
                  std::domain_error);
  CHECK_THROWS_AS(hyperfine_matrix_element_sq(0.5, 2.5, 3.0, 4.0, 2.0, 0.0, Axis::x),
                  std::domain_error);
}

TEST_CASE("hyperfine elements: frozen values") {
  // independent symbolic evaluation: S=1/2, I=5/2, F=2 m=0 -> F=3 m=1, x axis
  CHECK(hyperfine_matrix_element_sq(0.5, 2.5, 3.0, 1.0, 2.0, 0.0, Axis::x) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  // averaged strengths are isotropic: 7/36 (Rb85 2->3), 3/16 (Cs133 3->4)
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    CHECK(hyperfine_matrix_element_sq_avg(0.5, 2.5, 3.0, 2.0, a) ==
          doctest::Approx(7.0 / 36.0).epsilon(1e-12));
    CHECK(hyperfine_matrix_element_sq_avg(0.5, 3.5, 4.0, 3.0, a) ==
          doctest::Approx(3.0 / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("hyperfine elements: I = 0 reduces to the bare spin average") {
  // with no nuclear spin, F = S and the m-average is just the averaged bare
  // element: 1/4 per axis for S = 1/2
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    CHECK(hyperfine_matrix_element_sq_avg(0.5, 0.0, 0.5, 0.5, a) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }
  // the off-diagonal (flip) part alone carries 1/2 when summed over axes
  double flip = 0.0;
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    flip += hyperfine_matrix_element_sq(0.5, 0.0, 0.5, 0.5, 0.5, -0.5, a);
  }
  CHECK(flip == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hyperfine elements: completeness over final states") {
  // summing the unaveraged strengths over alpha and all final F, m recovers
  // <S^2> = S(S+1) from any initial level
  for (const auto& [S, I] : std::vector<std::pair<double, double>>{
           {0.5, 2.5}, {0.5, 3.5}, {1.0, 1.5}}) {
    const SpinSystem sys(S, I);
    const auto fs = sys.f_values();
    const double fi = fs.back();
    for (double mi : {fi, fi - 1.0, fi - 2.0}) {
      if (std::abs(mi) > fi) continue;
      double total = 0.0;
      for (double ff : fs) {
        const int ff2 = static_cast<int>(std::lround(2.0 * ff));
        for (int mf2 = -ff2; mf2 <= ff2; mf2 += 2) {
          for (Axis a : {Axis::x, Axis::y, Axis::z}) {
            total += hyperfine_matrix_element_sq(S, I, ff, 0.5 * mf2, fi, mi, a);
          }
        }
      }
      CHECK(total == doctest::Approx(S * (S + 1.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("hyperfine elements agree with the dense oracle") {
  for (const auto& [S, I] : spin_pairs_up_to(8)) {
    const CoupledBasis basis = build_coupled_basis(S, I);
    const SpinSystem sys(S, I);
    const auto fs = sys.f_values();
    for (double ff : fs) {
      for (double fi : fs) {
        const int ff2 = static_cast<int>(std::lround(2.0 * ff));
        const int fi2 = static_cast<int>(std::lround(2.0 * fi));
        for (int mf2 = -ff2; mf2 <= ff2; mf2 += 2) {
          for (int mi2 = -fi2; mi2 <= fi2; mi2 += 2) {
            for (Axis a : {Axis::x, Axis::y, Axis::z}) {
              const double got = hyperfine_matrix_element_sq(
                  S, I, ff, 0.5 * mf2, fi, 0.5 * mi2, a);
              const double want = std::norm(dense_hyperfine_element(
                  basis, S, ff2, mf2, fi2, mi2, a));
              CHECK(got == doctest::Approx(want).epsilon(1e-11).scale(1.0));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("spin system and atom presets") {
  const SpinSystem rb(0.5, 2.5);
  CHECK(rb.f_values() == std::vector<double>{2.0, 3.0});
  CHECK(rb.valid_f(2.0));
  CHECK(!rb.valid_f(4.0));

  // level count (2S+1)(2I+1), ordered by F then m
  const auto levels = rb.hyperfine_levels();
  REQUIRE(levels.size() == 12);
  CHECK(levels.front().f == 2.0);
  CHECK(levels.front().m == -2.0);
  CHECK(levels.back().f == 3.0);
  CHECK(levels.back().m == 3.0);
  CHECK_THROWS_AS(SpinSystem(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpinSystem(0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpinSystem(0.7, 0.0), std::domain_error);

  const auto rb85 = find_atom_preset("rb85");
  REQUIRE(rb85.has_value());
  CHECK(rb85->nuclear_spin == 2.5);
  CHECK(rb85->hyperfine_frequency ==
        doctest::Approx(2.0 * k::pi * 3.04e9).epsilon(1e-12));
  CHECK(rb85->f_initial == 2.0);
  CHECK(rb85->f_final == 3.0);

  const auto cs = find_atom_preset("cs133");
  REQUIRE(cs.has_value());
  CHECK(cs->nuclear_spin == 3.5);
  CHECK(cs->hyperfine_frequency ==
        doctest::Approx(2.0 * k::pi * 9.193e9).epsilon(1e-12));
  CHECK(cs->f_initial == 3.0);
  CHECK(cs->f_final == 4.0);
}
