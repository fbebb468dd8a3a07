#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trapnoise/material.hpp"
#include "trapnoise/spectra.hpp"

namespace trapnoise {

enum class ScenarioMode {
  ion_heating,
  spin_heating,
  zeeman_loss,
  hyperfine_loss,
  spectrum,
};

enum class SweepVariable { distance, frequency };

struct MaterialSpec {
  std::string preset;            // copper / glass, or empty for inline values
  double resistivity = 0.0;      // ohm m; used when preset is empty
  double static_eps_real = 1.0;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::distance;
  double start = 0.0;
  double stop = 0.0;
  int points_per_decade = 25;
  bool log_spaced = true;
  int points = 0;  // total points for linear spacing
};

/// A full sweep description: mode, surface, environment and the per-mode
/// particle parameters. Frequencies are ordinary frequencies in Hz.
struct Scenario {
  ScenarioMode mode = ScenarioMode::ion_heating;
  MaterialSpec material;
  double temperature = 300.0;  // K
  MethodPolicy method = MethodPolicy::automatic;
  SweepSpec sweep;

  double frequency_hz = 0.0;  // trap / Larmor / hyperfine / field frequency
  double distance = 0.0;      // fixed distance for frequency sweeps, m
  double mass_amu = 0.0;
  double charge_e = 0.0;      // units of the elementary charge
  std::array<double, 3> axis{0.0, 0.0, 1.0};
  double theta = 0.0;         // bias-field angle from the surface normal, rad
  double spin = 0.5;
  double nuclear_spin = 0.0;
  double g_s = 2.0023;
  double m_initial = 0.0;
  bool m_initial_set = false;
  double m_final = 0.0;
  bool m_final_set = false;
  double f_initial = 0.0;
  double f_final = 0.0;
  SpectrumKind spectrum_kind = SpectrumKind::electric;
  bool include_blackbody = false;
  double quad_rel_tol = 1e-8;
  int quad_max_subdivisions = 10000;
};

struct SweepRow {
  double variable = 0.0;            // sweep variable value (z in m, or f in Hz)
  std::vector<double> values;       // rate, or spectrum components
  std::string method;               // "exact" / "asymptotic" / "error"
  double rel_error = 0.0;
  std::string error;                // non-empty when the point failed
};

struct ScenarioResult {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  bool partial_failures = false;
};

std::optional<ScenarioMode> parse_mode(const std::string& s);
const char* to_string(ScenarioMode mode);

Scenario default_scenario(ScenarioMode mode);

/// Applies one `key = value` assignment; returns an error message or empty.
std::string apply_scenario_key(Scenario& s, const std::string& key,
                               const std::string& value);

/// Loads a flat key-value scenario file ('#' starts a comment). Parse problems
/// are appended to `errors`, one per offending line.
Scenario load_scenario_file(const std::string& path,
                            std::vector<std::string>& errors);

/// Full validation; returns one message per offending field (empty when valid).
std::vector<std::string> validate_scenario(const Scenario& s);

/// Resolves the material spec against the built-in presets.
Material resolve_material(const MaterialSpec& spec);

/// Evaluates the sweep. The scenario must validate; rows that fail numerically
/// are annotated and do not abort the sweep.
ScenarioResult run_scenario(const Scenario& s);

/// CSV with a units-bearing header and 9-significant-digit values;
/// byte-deterministic for identical results.
void emit_csv(const ScenarioResult& result, std::ostream& out);

}  // namespace trapnoise
