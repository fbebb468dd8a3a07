#include "trapnoise/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "trapnoise/angular.hpp"
#include "trapnoise/constants.hpp"
#include "trapnoise/rates.hpp"

namespace trapnoise {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool parse_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes") { out = true; return true; }
  if (s == "false" || s == "0" || s == "no") { out = false; return true; }
  return false;
}

std::optional<MethodPolicy> parse_method(const std::string& s) {
  if (s == "auto" || s == "automatic") return MethodPolicy::automatic;
  if (s == "exact") return MethodPolicy::exact;
  if (s == "asymptotic") return MethodPolicy::asymptotic;
  return std::nullopt;
}

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

std::optional<ScenarioMode> parse_mode(const std::string& s) {
  if (s == "ion_heating" || s == "ion-heating") return ScenarioMode::ion_heating;
  if (s == "spin_heating" || s == "spin-heating") return ScenarioMode::spin_heating;
  if (s == "zeeman_loss" || s == "zeeman-loss") return ScenarioMode::zeeman_loss;
  if (s == "hyperfine_loss" || s == "hyperfine-loss") return ScenarioMode::hyperfine_loss;
  if (s == "spectrum") return ScenarioMode::spectrum;
  return std::nullopt;
}

const char* to_string(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::ion_heating: return "ion_heating";
    case ScenarioMode::spin_heating: return "spin_heating";
    case ScenarioMode::zeeman_loss: return "zeeman_loss";
    case ScenarioMode::hyperfine_loss: return "hyperfine_loss";
    case ScenarioMode::spectrum: return "spectrum";
  }
  return "unknown";
}

Scenario default_scenario(ScenarioMode mode) {
  Scenario s;
  s.mode = mode;
  s.material.preset = "copper";
  s.sweep.variable = SweepVariable::distance;
  s.sweep.start = 1e-7;
  s.sweep.stop = 1e-3;
  s.theta = 0.5 * constants::pi;
  return s;
}

std::string apply_scenario_key(Scenario& s, const std::string& raw_key,
                               const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  auto bad = [&](const char* what) {
    return "invalid value for '" + key + "': " + what;
  };

  double d = 0.0;
  bool b = false;
  if (key == "mode") {
    auto m = parse_mode(value);
    if (!m) return bad("expected ion_heating|spin_heating|zeeman_loss|hyperfine_loss|spectrum");
    s.mode = *m;
  } else if (key == "material") {
    s.material.preset = value;
  } else if (key == "resistivity") {
    if (!parse_double(value, d)) return bad("expected a number (ohm m)");
    s.material.resistivity = d;
    s.material.preset.clear();
  } else if (key == "static_eps_real") {
    if (!parse_double(value, d)) return bad("expected a number");
    s.material.static_eps_real = d;
  } else if (key == "temperature") {
    if (!parse_double(value, d)) return bad("expected kelvin");
    s.temperature = d;
  } else if (key == "method") {
    auto m = parse_method(value);
    if (!m) return bad("expected auto|exact|asymptotic");
    s.method = *m;
  } else if (key == "sweep") {
    if (value == "distance") s.sweep.variable = SweepVariable::distance;
    else if (value == "frequency") s.sweep.variable = SweepVariable::frequency;
    else return bad("expected distance|frequency");
  } else if (key == "start") {
    if (!parse_double(value, d)) return bad("expected a number");
    s.sweep.start = d;
  } else if (key == "stop") {
    if (!parse_double(value, d)) return bad("expected a number");
    s.sweep.stop = d;
  } else if (key == "points_per_decade") {
    if (!parse_double(value, d) || d != std::floor(d)) return bad("expected an integer");
    s.sweep.points_per_decade = static_cast<int>(d);
  } else if (key == "points") {
    if (!parse_double(value, d) || d != std::floor(d)) return bad("expected an integer");
    s.sweep.points = static_cast<int>(d);
  } else if (key == "log_spaced") {
    if (!parse_bool(value, b)) return bad("expected true|false");
    s.sweep.log_spaced = b;
  } else if (key == "frequency") {
    if (!parse_double(value, d)) return bad("expected Hz");
    s.frequency_hz = d;
  } else if (key == "distance") {
    if (!parse_double(value, d)) return bad("expected meters");
    s.distance = d;
  } else if (key == "mass_amu") {
    if (!parse_double(value, d)) return bad("expected a mass in amu");
    s.mass_amu = d;
  } else if (key == "charge_e") {
    if (!parse_double(value, d)) return bad("expected a charge in units of e");
    s.charge_e = d;
  } else if (key == "axis") {
    if (value == "x") s.axis = {1.0, 0.0, 0.0};
    else if (value == "y") s.axis = {0.0, 1.0, 0.0};
    else if (value == "z") s.axis = {0.0, 0.0, 1.0};
    else {
      std::array<double, 3> n{};
      std::stringstream ss(value);
      std::string part;
      int i = 0;
      while (std::getline(ss, part, ',') && i < 3) {
        if (!parse_double(trim(part), n[i])) return bad("expected x|y|z or nx,ny,nz");
        ++i;
      }
      if (i != 3) return bad("expected x|y|z or nx,ny,nz");
      s.axis = n;
    }
  } else if (key == "theta") {
    if (!parse_double(value, d)) return bad("expected radians");
    s.theta = d;
  } else if (key == "spin") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.spin = d;
  } else if (key == "nuclear_spin") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.nuclear_spin = d;
  } else if (key == "g_s") {
    if (!parse_double(value, d)) return bad("expected a number");
    s.g_s = d;
  } else if (key == "m_initial") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.m_initial = d;
    s.m_initial_set = true;
  } else if (key == "m_final") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.m_final = d;
    s.m_final_set = true;
  } else if (key == "atom") {
    auto preset = angular::find_atom_preset(value);
    if (!preset) return bad("unknown atom preset (try rb85 or cs133)");
    s.spin = 0.5;
    s.nuclear_spin = preset->nuclear_spin;
    s.frequency_hz = preset->hyperfine_frequency / (2.0 * constants::pi);
    s.f_initial = preset->f_initial;
    s.f_final = preset->f_final;
  } else if (key == "f_initial") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.f_initial = d;
  } else if (key == "f_final") {
    if (!parse_double(value, d)) return bad("expected a half-integer");
    s.f_final = d;
  } else if (key == "spectrum_kind") {
    if (value == "electric") s.spectrum_kind = SpectrumKind::electric;
    else if (value == "magnetic") s.spectrum_kind = SpectrumKind::magnetic;
    else return bad("expected electric|magnetic");
  } else if (key == "include_blackbody") {
    if (!parse_bool(value, b)) return bad("expected true|false");
    s.include_blackbody = b;
  } else if (key == "quad_rel_tol") {
    if (!parse_double(value, d)) return bad("expected a number");
    s.quad_rel_tol = d;
  } else if (key == "quad_max_subdivisions") {
    if (!parse_double(value, d) || d != std::floor(d)) return bad("expected an integer");
    s.quad_max_subdivisions = static_cast<int>(d);
  } else {
    return "unknown key '" + key + "'";
  }
  return "";
}

Scenario load_scenario_file(const std::string& path,
                            std::vector<std::string>& errors) {
  Scenario s = default_scenario(ScenarioMode::ion_heating);
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open scenario file '" + path + "'");
    return s;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(path + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string err =
        apply_scenario_key(s, line.substr(0, eq), line.substr(eq + 1));
    if (!err.empty()) {
      errors.push_back(path + ":" + std::to_string(lineno) + ": " + err);
    }
  }
  return s;
}

Material resolve_material(const MaterialSpec& spec) {
  if (!spec.preset.empty()) {
    auto m = find_material_preset(spec.preset);
    if (!m) throw std::invalid_argument("unknown material preset '" + spec.preset + "'");
    return *m;
  }
  return Material("custom", spec.resistivity, spec.static_eps_real);
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errors;
  auto err = [&](const std::string& field, const std::string& what) {
    errors.push_back(field + ": " + what);
  };

  if (!s.material.preset.empty()) {
    if (!find_material_preset(s.material.preset)) {
      err("material", "unknown preset '" + s.material.preset + "'");
    }
  } else if (!(s.material.resistivity > 0.0)) {
    err("resistivity", "must be > 0 for an inline material");
  } else if (!(s.material.static_eps_real >= 1.0)) {
    err("static_eps_real", "must be >= 1");
  }
  if (!(s.temperature >= 0.0)) err("temperature", "must be >= 0");

  if (!(s.sweep.start > 0.0)) err("start", "sweep bounds must be positive");
  if (!(s.sweep.stop > 0.0)) err("stop", "sweep bounds must be positive");
  if (s.sweep.start > 0.0 && s.sweep.stop > 0.0 && s.sweep.start >= s.sweep.stop) {
    err("stop", "must be greater than start");
  }
  if (s.sweep.log_spaced) {
    if (s.sweep.points_per_decade < 1) err("points_per_decade", "must be >= 1");
  } else if (s.sweep.points < 2) {
    err("points", "linear sweeps need at least 2 points");
  }

  if (!(s.frequency_hz > 0.0)) err("frequency", "must be > 0 Hz");
  if (s.sweep.variable == SweepVariable::frequency && !(s.distance > 0.0)) {
    err("distance", "frequency sweeps need a fixed distance > 0");
  }
  if (!(s.quad_rel_tol > 0.0)) err("quad_rel_tol", "must be > 0");
  if (s.quad_max_subdivisions < 1) err("quad_max_subdivisions", "must be >= 1");

  const bool needs_trap = s.mode == ScenarioMode::ion_heating ||
                          s.mode == ScenarioMode::spin_heating;
  if (needs_trap && !(s.mass_amu > 0.0)) err("mass_amu", "must be > 0");

  switch (s.mode) {
    case ScenarioMode::ion_heating: {
      if (s.charge_e == 0.0) err("charge_e", "ion heating needs a nonzero charge");
      const double n2 = s.axis[0] * s.axis[0] + s.axis[1] * s.axis[1] +
                        s.axis[2] * s.axis[2];
      if (std::abs(n2 - 1.0) > 1e-6) err("axis", "must be a unit vector");
      break;
    }
    case ScenarioMode::spin_heating:
      if (!(s.spin >= 0.5)) err("spin", "must be >= 1/2");
      if (s.m_initial_set && std::abs(s.m_initial) > s.spin) {
        err("m_initial", "|m| must not exceed spin");
      }
      break;
    case ScenarioMode::zeeman_loss:
      if (!(s.spin >= 0.5)) err("spin", "must be >= 1/2");
      if (!(s.theta >= 0.0 && s.theta <= constants::pi)) {
        err("theta", "must lie in [0, pi]");
      }
      if (s.m_initial_set != s.m_final_set) {
        err("m_final", "m_initial and m_final must be given together");
      }
      if (s.m_initial_set && std::abs(s.m_initial) > s.spin) {
        err("m_initial", "|m| must not exceed spin");
      }
      if (s.m_final_set && std::abs(s.m_final) > s.spin) {
        err("m_final", "|m| must not exceed spin");
      }
      break;
    case ScenarioMode::hyperfine_loss: {
      if (!(s.spin >= 0.5)) err("spin", "must be >= 1/2");
      if (s.nuclear_spin < 0.0) err("nuclear_spin", "must be >= 0");
      try {
        angular::SpinSystem sys(s.spin, s.nuclear_spin, s.g_s);
        if (!sys.valid_f(s.f_initial)) err("f_initial", "not a valid F for this S, I");
        if (!sys.valid_f(s.f_final)) err("f_final", "not a valid F for this S, I");
      } catch (const std::exception& e) {
        err("spin", e.what());
      }
      break;
    }
    case ScenarioMode::spectrum:
      break;
  }
  return errors;
}

namespace {

std::vector<double> sweep_grid(const SweepSpec& sweep) {
  std::vector<double> xs;
  if (sweep.log_spaced) {
    const double decades = std::log10(sweep.stop / sweep.start);
    const int n = std::max(
        2, static_cast<int>(std::ceil(decades * sweep.points_per_decade)) + 1);
    const double la = std::log(sweep.start);
    const double lb = std::log(sweep.stop);
    xs.reserve(n);
    for (int i = 0; i < n; ++i) {
      xs.push_back(std::exp(la + (lb - la) * i / (n - 1)));
    }
  } else {
    const int n = sweep.points;
    xs.reserve(n);
    for (int i = 0; i < n; ++i) {
      xs.push_back(sweep.start + (sweep.stop - sweep.start) * i / (n - 1));
    }
  }
  return xs;
}

struct PointResult {
  std::vector<double> values;
  EvaluationMethod method;
  double rel_error = 0.0;
};

PointResult evaluate_point(const Scenario& s, const Material& mat,
                           const ThermalEnvironment& env, double z,
                           double frequency_hz) {
  const double omega = 2.0 * constants::pi * frequency_hz;
  SpectrumOptions opts;
  opts.method = s.method;
  opts.include_blackbody = s.include_blackbody;
  opts.quad.rel_tol = s.quad_rel_tol;
  opts.quad.max_subdivisions = s.quad_max_subdivisions;

  PointResult out;
  switch (s.mode) {
    case ScenarioMode::ion_heating: {
      const TrapConfig trap(omega, s.mass_amu * constants::atomic_mass_unit,
                            s.axis, z,
                            s.charge_e * constants::elementary_charge);
      const RateResult r = ion_heating_rate(trap, mat, env, opts);
      out.values = {r.rate};
      out.method = r.method;
      out.rel_error = r.rel_error;
      break;
    }
    case ScenarioMode::spin_heating: {
      const TrapConfig trap(omega, s.mass_amu * constants::atomic_mass_unit,
                            {0.0, 0.0, 1.0}, z);
      const angular::SpinSystem spin(s.spin, 0.0, s.g_s);
      const double m0 = s.m_initial_set ? s.m_initial : -s.spin;
      const RateResult r = spin_heating_rate(trap, mat, env, spin, m0);
      out.values = {r.rate};
      out.method = r.method;
      out.rel_error = r.rel_error;
      break;
    }
    case ScenarioMode::zeeman_loss: {
      const angular::SpinSystem spin(s.spin, 0.0, s.g_s);
      const SurfaceGeometry geom(z);
      const double mi = s.m_initial_set ? s.m_initial : -s.spin;
      const double mf = s.m_final_set ? s.m_final : -s.spin + 1.0;
      const RateResult r =
          zeeman_loss_rate(spin, omega, mat, env, geom, s.theta, mi, mf, opts);
      out.values = {r.rate};
      out.method = r.method;
      out.rel_error = r.rel_error;
      break;
    }
    case ScenarioMode::hyperfine_loss: {
      const angular::SpinSystem spin(s.spin, s.nuclear_spin, s.g_s);
      const SurfaceGeometry geom(z);
      const RateResult r = hyperfine_loss_rate(spin, omega, mat, env, geom,
                                               s.f_initial, s.f_final, opts);
      out.values = {r.rate};
      out.method = r.method;
      out.rel_error = r.rel_error;
      break;
    }
    case ScenarioMode::spectrum: {
      const SurfaceGeometry geom(z);
      const DiagonalSpectrumTensor t =
          s.spectrum_kind == SpectrumKind::electric
              ? electric_nearfield_spectrum(mat, env, geom, omega, opts)
              : magnetic_nearfield_spectrum(mat, env, geom, omega, opts);
      out.values = {t.parallel, t.perpendicular};
      out.method = t.method;
      out.rel_error = t.rel_error;
      break;
    }
  }
  return out;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& s) {
  const auto problems = validate_scenario(s);
  if (!problems.empty()) {
    std::string all = "invalid scenario:";
    for (const auto& p : problems) all += "\n  " + p;
    throw std::invalid_argument(all);
  }

  const Material mat = resolve_material(s.material);
  const ThermalEnvironment env(s.temperature);

  ScenarioResult result;
  const bool distance_sweep = s.sweep.variable == SweepVariable::distance;
  result.columns.push_back(distance_sweep ? "z_m" : "f_hz");
  if (s.mode == ScenarioMode::spectrum) {
    const char* unit =
        s.spectrum_kind == SpectrumKind::electric ? "V2_m-2_s" : "T2_s";
    result.columns.push_back(std::string("S_par_") + unit);
    result.columns.push_back(std::string("S_perp_") + unit);
  } else {
    result.columns.push_back("rate_per_s");
  }
  result.columns.push_back("method");
  result.columns.push_back("rel_err");

  const std::size_t n_values = s.mode == ScenarioMode::spectrum ? 2 : 1;
  for (double x : sweep_grid(s.sweep)) {
    SweepRow row;
    row.variable = x;
    const double z = distance_sweep ? x : s.distance;
    const double f = distance_sweep ? s.frequency_hz : x;
    try {
      const PointResult p = evaluate_point(s, mat, env, z, f);
      row.values = p.values;
      row.method = to_string(p.method);
      row.rel_error = p.rel_error;
    } catch (const std::exception& e) {
      row.values.assign(n_values, std::nan(""));
      row.method = "error";
      row.rel_error = std::nan("");
      row.error = e.what();
      result.partial_failures = true;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

void emit_csv(const ScenarioResult& result, std::ostream& out) {
  if (result.rows.empty()) {
    throw std::invalid_argument("emit_csv: no rows to write");
  }
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (i) out << ',';
    out << result.columns[i];
  }
  out << '\n';
  for (const auto& row : result.rows) {
    out << format_g9(row.variable);
    for (double v : row.values) out << ',' << format_g9(v);
    out << ',' << row.method << ',' << format_g9(row.rel_error) << '\n';
  }
  if (!out) throw std::runtime_error("emit_csv: write failed");
}

}  // namespace trapnoise
