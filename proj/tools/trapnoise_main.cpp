// Command-line front end: parameter sweeps for near-field heating and loss
// rates above a warm surface, emitted as CSV.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "trapnoise/angular.hpp"
#include "trapnoise/constants.hpp"
#include "trapnoise/scenario.hpp"

namespace {

using trapnoise::Scenario;
using trapnoise::ScenarioMode;

struct CommonArgs {
  std::string config;
  std::string output;
  std::vector<std::pair<std::string, std::string>> assignments;
};

// Records a flag as a scenario key assignment so that command-line values
// override whatever the config file set.
void add_key_option(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                    const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag,
      [&args, key](const std::string& v) { args.assignments.emplace_back(key, v); },
      help);
}

void add_range_option(CLI::App* cmd, CommonArgs& args, const std::string& flag,
                      const std::string& sweep_kind, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag,
      [&args, sweep_kind](const std::string& v) {
        const auto colon = v.find(':');
        if (colon == std::string::npos) {
          throw CLI::ValidationError("expected START:STOP, got '" + v + "'");
        }
        args.assignments.emplace_back("sweep", sweep_kind);
        args.assignments.emplace_back("start", v.substr(0, colon));
        args.assignments.emplace_back("stop", v.substr(colon + 1));
      },
      help);
}

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "scenario file (key = value lines)");
  cmd->add_option("--output", args.output, "CSV destination (default: stdout)");
  add_key_option(cmd, args, "--material", "material", "material preset (copper, glass)");
  add_key_option(cmd, args, "--resistivity", "resistivity", "inline material resistivity, ohm m");
  add_key_option(cmd, args, "--static-eps", "static_eps_real", "inline material Re eps");
  add_key_option(cmd, args, "--temperature", "temperature", "surface temperature, K");
  add_key_option(cmd, args, "--method", "method", "auto | exact | asymptotic");
  add_key_option(cmd, args, "--frequency", "frequency", "mode frequency, Hz");
  add_key_option(cmd, args, "--distance", "distance", "fixed distance for frequency sweeps, m");
  add_key_option(cmd, args, "--points-per-decade", "points_per_decade", "log sweep density (default 25)");
  add_range_option(cmd, args, "--distance-range", "distance", "distance sweep START:STOP in m");
  add_range_option(cmd, args, "--frequency-range", "frequency", "frequency sweep START:STOP in Hz");
}

int run_mode(ScenarioMode mode, const CommonArgs& args) {
  std::vector<std::string> file_errors;
  Scenario s = args.config.empty()
                   ? trapnoise::default_scenario(mode)
                   : trapnoise::load_scenario_file(args.config, file_errors);
  if (!file_errors.empty()) {
    for (const auto& e : file_errors) std::cerr << "error: " << e << '\n';
    return 1;
  }
  s.mode = mode;
  for (const auto& [key, value] : args.assignments) {
    const std::string err = trapnoise::apply_scenario_key(s, key, value);
    if (!err.empty()) {
      std::cerr << "error: " << err << '\n';
      return 1;
    }
  }

  const auto problems = trapnoise::validate_scenario(s);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "error: " << p << '\n';
    return 1;
  }

  trapnoise::ScenarioResult result;
  try {
    result = trapnoise::run_scenario(s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (args.output.empty()) {
      trapnoise::emit_csv(result, std::cout);
    } else {
      std::ofstream out(args.output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open '" << args.output << "' for writing\n";
        return 1;
      }
      trapnoise::emit_csv(result, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (result.partial_failures) {
    std::size_t failed = 0;
    for (const auto& row : result.rows) {
      if (!row.error.empty()) ++failed;
    }
    std::cerr << "warning: " << failed << " of " << result.rows.size()
              << " sweep points failed numerically (rows marked 'error')\n";
    return 2;
  }
  return 0;
}

void list_presets() {
  std::cout << "materials:\n";
  for (const auto& m : trapnoise::material_presets()) {
    std::cout << "  " << m.name << ": resistivity = " << m.resistivity
              << " ohm m, Re eps = " << m.static_eps_real << '\n';
  }
  std::cout << "atoms:\n";
  for (const auto& a : trapnoise::angular::atom_presets()) {
    std::cout << "  " << a.name << ": I = " << a.nuclear_spin
              << ", hyperfine splitting = "
              << a.hyperfine_frequency / (2.0 * trapnoise::constants::pi)
              << " Hz, F " << a.f_initial << " -> " << a.f_final << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal near-field noise spectra and trap heating/loss rates"};
  app.require_subcommand(1);

  struct ModeSpec {
    const char* name;
    const char* help;
    ScenarioMode mode;
  };
  const std::vector<ModeSpec> modes = {
      {"ion-heating", "motional heating rate of a trapped ion", ScenarioMode::ion_heating},
      {"spin-heating", "magnetic force-gradient heating of a trapped spin", ScenarioMode::spin_heating},
      {"zeeman-loss", "spin-flip loss rate in a magnetic trap", ScenarioMode::zeeman_loss},
      {"hyperfine-loss", "hyperfine-changing loss rate in an optical trap", ScenarioMode::hyperfine_loss},
      {"spectrum", "electric or magnetic near-field noise spectrum", ScenarioMode::spectrum},
  };

  std::vector<std::unique_ptr<CommonArgs>> arg_blocks;
  std::vector<std::pair<CLI::App*, ScenarioMode>> mode_cmds;
  for (const auto& spec : modes) {
    auto* cmd = app.add_subcommand(spec.name, spec.help);
    arg_blocks.push_back(std::make_unique<CommonArgs>());
    CommonArgs& args = *arg_blocks.back();
    add_common_options(cmd, args);
    switch (spec.mode) {
      case ScenarioMode::ion_heating:
        add_key_option(cmd, args, "--mass-amu", "mass_amu", "particle mass, amu");
        add_key_option(cmd, args, "--charge-e", "charge_e", "charge in units of e");
        add_key_option(cmd, args, "--axis", "axis", "trap axis: x|y|z or nx,ny,nz");
        break;
      case ScenarioMode::spin_heating:
        add_key_option(cmd, args, "--mass-amu", "mass_amu", "particle mass, amu");
        add_key_option(cmd, args, "--spin", "spin", "electronic spin S");
        add_key_option(cmd, args, "--g-s", "g_s", "electronic g-factor");
        add_key_option(cmd, args, "--m-initial", "m_initial", "initial Zeeman m");
        break;
      case ScenarioMode::zeeman_loss:
        add_key_option(cmd, args, "--theta", "theta", "bias field angle from the normal, rad");
        add_key_option(cmd, args, "--spin", "spin", "electronic spin S");
        add_key_option(cmd, args, "--g-s", "g_s", "electronic g-factor");
        add_key_option(cmd, args, "--m-initial", "m_initial", "initial Zeeman m");
        add_key_option(cmd, args, "--m-final", "m_final", "final Zeeman m");
        break;
      case ScenarioMode::hyperfine_loss:
        add_key_option(cmd, args, "--atom", "atom", "atom preset (rb85, cs133)");
        add_key_option(cmd, args, "--spin", "spin", "electronic spin S");
        add_key_option(cmd, args, "--nuclear-spin", "nuclear_spin", "nuclear spin I");
        add_key_option(cmd, args, "--g-s", "g_s", "electronic g-factor");
        add_key_option(cmd, args, "--f-initial", "f_initial", "initial hyperfine F");
        add_key_option(cmd, args, "--f-final", "f_final", "final hyperfine F");
        break;
      case ScenarioMode::spectrum:
        add_key_option(cmd, args, "--kind", "spectrum_kind", "electric | magnetic");
        add_key_option(cmd, args, "--include-blackbody", "include_blackbody",
                       "add the free-space term (true|false)");
        break;
    }
    mode_cmds.emplace_back(cmd, spec.mode);
  }

  auto* presets = app.add_subcommand("presets", "built-in material and atom presets");
  auto* presets_list = presets->add_subcommand("list", "list presets");
  presets->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  if (presets_list->parsed()) {
    list_presets();
    return 0;
  }
  for (std::size_t i = 0; i < mode_cmds.size(); ++i) {
    if (mode_cmds[i].first->parsed()) {
      return run_mode(mode_cmds[i].second, *arg_blocks[i]);
    }
  }
  return 1;
}
