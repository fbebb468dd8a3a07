#include <cmath>
#include <complex>

#include "doctest.h"
#include "trapnoise/constants.hpp"
#include "trapnoise/material.hpp"

using namespace trapnoise;
namespace k = trapnoise::constants;

namespace {
const Material copper("copper", 1.7e-8, 1.0);
const Material glass("glass", 1e9, 5.0);
const double w1M = 2.0 * k::pi * 1e6;
}  // namespace

TEST_CASE("material invariants are enforced") {
  CHECK_THROWS_AS(Material("bad", 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Material("bad", -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Material("bad", 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ThermalEnvironment(-1.0), std::invalid_argument);
}

TEST_CASE("dielectric function: conductor pole") {
  // independent evaluation of 1/(eps0 rho w): 1.05735903381e12 for copper at 1 MHz
  const auto eps = dielectric_function(copper, w1M);
  CHECK(eps.real() == doctest::Approx(1.0));
  CHECK(eps.imag() == doctest::Approx(1.05735903381e12).epsilon(1e-9));

  const auto eps_glass = dielectric_function(glass, w1M);
  CHECK(eps_glass.real() == doctest::Approx(5.0));
  CHECK(eps_glass.imag() == doctest::Approx(1.79751035747e-5).epsilon(1e-9));

  CHECK_THROWS_AS(dielectric_function(copper, 0.0), std::domain_error);
}

TEST_CASE("dielectric function: reality condition") {
  for (double w : {1e3, 1e6, 1e9, 2.7e7}) {
    const auto plus = dielectric_function(copper, w);
    const auto minus = dielectric_function(copper, -w);
    CHECK(minus == std::conj(plus));
  }
}

TEST_CASE("skin depth") {
  CHECK(skin_depth(copper, w1M) == doctest::Approx(6.56212641207e-5).epsilon(1e-9));
  CHECK(skin_depth(copper, 2.0 * k::pi * 1e8) ==
        doctest::Approx(6.56212641207e-6).epsilon(1e-9));
  // scales as w^(-1/2), sign-independent
  CHECK(skin_depth(copper, -w1M) == skin_depth(copper, w1M));
  CHECK_THROWS_AS(skin_depth(copper, 0.0), std::domain_error);
  // rho -> 0 limit: the perfect conductor has vanishing skin depth
  CHECK(skin_depth(Material("pc-ish", 1e-30), w1M) < 1e-15);
}

TEST_CASE("skin depth consistent with Im eps") {
  // delta * w/c = sqrt(2 / Im eps) for the pure conductor model
  const double kz_delta = skin_depth(copper, w1M) * w1M / k::speed_of_light;
  const double im = dielectric_function(copper, w1M).imag();
  CHECK(kz_delta == doctest::Approx(std::sqrt(2.0 / im)).epsilon(1e-10));
}

TEST_CASE("blackbody spectrum") {
  const ThermalEnvironment room(300.0);
  const ThermalEnvironment cold(0.0);

  CHECK(blackbody_electric_spectrum(cold, -w1M) == 0.0);
  CHECK(blackbody_electric_spectrum(room, 0.0) == 0.0);
  // independent evaluation of the high-temperature form w^2 kB T/(3 pi eps0 c^3)
  CHECK(blackbody_electric_spectrum(room, w1M) ==
        doctest::Approx(7.27247676749e-23).epsilon(1e-9));
  // high-T: symmetric in omega to first order
  CHECK(blackbody_electric_spectrum(room, -w1M) ==
        doctest::Approx(blackbody_electric_spectrum(room, w1M)).epsilon(1e-6));
}

TEST_CASE("blackbody spectrum: detailed balance") {
  for (double T : {0.1, 4.2, 300.0, 1000.0}) {
    const ThermalEnvironment env(T);
    for (double w : {1e5, 1e8, 1e11, 1e13}) {
      const double x = k::hbar * w / (k::k_boltzmann * T);
      if (x > 600.0) continue;  // S(-w) underflows
      const double ratio = blackbody_electric_spectrum(env, w) /
                           blackbody_electric_spectrum(env, -w);
      CHECK(ratio == doctest::Approx(std::exp(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("thermal occupation") {
  const ThermalEnvironment room(300.0);
  CHECK(thermal_occupation(ThermalEnvironment(0.0), w1M) == 0.0);
  CHECK(thermal_occupation(room, w1M) == doctest::Approx(6250985.24083).epsilon(1e-9));
  // hbar w = kB T ln 2 solves exp(x) - 1 = 1
  const double w_ln2 = k::k_boltzmann * 300.0 * std::log(2.0) / k::hbar;
  CHECK(thermal_occupation(room, w_ln2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(thermal_occupation(room, 0.0), std::domain_error);
  CHECK_THROWS_AS(thermal_occupation(room, -1.0), std::domain_error);
}

TEST_CASE("fdt spectrum") {
  const ThermalEnvironment room(300.0);
  const ThermalEnvironment cold(0.0);
  const double img = 3.7e-4;  // arbitrary Im G

  CHECK(fdt_spectrum(img, cold, -w1M) == 0.0);
  CHECK(fdt_spectrum(img, cold, w1M) == doctest::Approx(2.0 * k::hbar * img));

  // emission/absorption asymmetry: S(+w)/S(-w) = exp(hbar w / kB T)
  const double w = 1e12;
  const double x = k::hbar * w / (k::k_boltzmann * 300.0);
  CHECK(fdt_spectrum(img, room, w) / fdt_spectrum(img, room, -w) ==
        doctest::Approx(std::exp(x)).epsilon(1e-12));
  // high-T: sign of omega becomes irrelevant
  CHECK(fdt_spectrum(img, room, w1M) / fdt_spectrum(img, room, -w1M) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("thermal energy bridges the regimes") {
  const ThermalEnvironment room(300.0);
  CHECK(thermal_energy(room, 1e-3) ==
        doctest::Approx(k::k_boltzmann * 300.0).epsilon(1e-10));
  CHECK(thermal_energy(ThermalEnvironment(0.0), w1M) ==
        doctest::Approx(k::hbar * w1M));
  CHECK(thermal_energy(ThermalEnvironment(0.0), -w1M) == 0.0);
}

TEST_CASE("outputs stay finite on the documented domains") {
  const ThermalEnvironment room(300.0);
  for (double w : {-1e12, -1e6, -1.0, 1.0, 1e6, 1e12}) {
    CHECK(std::isfinite(std::abs(dielectric_function(copper, w))));
    CHECK(std::isfinite(skin_depth(copper, w)));
    CHECK(std::isfinite(blackbody_electric_spectrum(room, w)));
    CHECK(std::isfinite(fdt_spectrum(1.0, room, w)));
  }
}

TEST_CASE("built-in presets carry the published parameters") {
  auto cu = find_material_preset("copper");
  REQUIRE(cu.has_value());
  CHECK(cu->resistivity == doctest::Approx(1.7e-8).epsilon(1e-15));
  CHECK(cu->static_eps_real == 1.0);

  auto gl = find_material_preset("glass");
  REQUIRE(gl.has_value());
  CHECK(gl->resistivity == doctest::Approx(1e9).epsilon(1e-15));
  CHECK(gl->static_eps_real == 5.0);

  CHECK(!find_material_preset("unobtainium").has_value());
}
