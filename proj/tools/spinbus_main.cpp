// spinbus: qudit state transfer through a spin-S XX chain.
//
// Subcommands: transfer | avg-fidelity | entangle | thermal | modes.
// Emits CSV (12 significant digits) or JSON; identical config and seed give
// byte-identical output. Exit codes: 0 ok, 2 invalid config, 3 unsupported
// configuration (e.g. optimal time on an even bus), 4 thermal truncation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spinbus/effective.hpp"
#include "spinbus/engine.hpp"
#include "spinbus/entanglement.hpp"
#include "spinbus/errors.hpp"
#include "spinbus/haar.hpp"
#include "spinbus/thermal.hpp"
#include "spinbus/transfer.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitInvalid = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitTruncation = 4;

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  bool log = false;

  std::vector<double> values() const {
    std::vector<double> out;
    if (count == 1) return {start};
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / (count - 1);
      out.push_back(log ? start * std::pow(stop / start, t)
                        : start + (stop - start) * t);
    }
    return out;
  }

  std::string spec() const {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.12g:%.12g:%d:%s", start, stop, count,
                  log ? "log" : "lin");
    return buf;
  }
};

GridSpec parse_grid(const std::string& text) {
  GridSpec grid;
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = text.find(':', begin);
    parts.push_back(text.substr(begin, end == std::string::npos ? end : end - begin));
    if (end == std::string::npos) break;
    begin = end + 1;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw std::invalid_argument("grid must be start:stop:count[:log|lin]: " + text);
  grid.start = std::stod(parts[0]);
  grid.stop = std::stod(parts[1]);
  grid.count = std::stoi(parts[2]);
  if (parts.size() == 4) {
    if (parts[3] == "log")
      grid.log = true;
    else if (parts[3] != "lin")
      throw std::invalid_argument("grid scale must be log or lin: " + text);
  }
  if (grid.count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (grid.log && (grid.start <= 0.0 || grid.stop <= 0.0))
    throw std::invalid_argument("log grids need positive endpoints");
  return grid;
}

// ---------------------------------------------------------------------------
// Run configuration: defaults, then config-file values, then flags.

struct RunConfig {
  std::string command;
  int bus_length = 3;
  double spin = 10.0;
  int dim = 3;
  double g_over_j = 0.1;
  double h_over_j = 0.0;
  int excitation_cap = -1;

  std::string time = "optimal";
  std::string time_grid;  // transfer only
  std::string state = "uniform";
  bool no_phase_gate = false;
  bool no_field_phase = false;

  std::string method = "exact";
  int samples = 20000;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string sweep = "none";
  std::string grid;

  std::string temp_grid = "1:20:10";
  double h_over_sj = -1.0;  // thermal override of h_over_j, in S J units
  std::string h_grid_over_sj;
  int n_cut = -1;
  double tail_tol = 1e-8;

  std::string output = "-";
  std::string format = "csv";

  spinbus::ChainConfig chain() const {
    spinbus::ChainConfig c;
    const double doubled = 2.0 * spin;
    if (std::abs(doubled - std::llround(doubled)) > 1e-9 || spin <= 0.0)
      throw std::invalid_argument("spin must be a positive multiple of 0.5");
    c.twice_spin = static_cast<int>(std::llround(doubled));
    c.bus_length = bus_length;
    c.qudit_dim = dim;
    c.coupling_j = 1.0;
    c.coupling_g = g_over_j;
    c.field_h = h_over_j;
    c.excitation_cap = excitation_cap;
    c.validate();
    return c;
  }
};

double resolve_time(const RunConfig& run, const spinbus::ChainConfig& chain) {
  if (run.time == "optimal") return spinbus::optimal_time(chain);
  std::size_t used = 0;
  const double tau = std::stod(run.time, &used);
  if (used != run.time.size() || tau < 0.0)
    throw std::invalid_argument("time must be a nonnegative number or 'optimal'");
  return tau;
}

spinbus::QuditAmplitudes parse_state(const std::string& text, int d) {
  if (text == "uniform") return spinbus::QuditAmplitudes::uniform(d);
  if (text.rfind("basis:", 0) == 0)
    return spinbus::QuditAmplitudes::basis_state(d, std::stoi(text.substr(6)));

  // Comma-separated amplitudes, each "re" or "re:im"; normalized.
  Eigen::VectorXcd coeff(d);
  std::size_t begin = 0;
  int i = 0;
  while (begin <= text.size() && i < d) {
    const std::size_t end = text.find(',', begin);
    const std::string token =
        text.substr(begin, end == std::string::npos ? end : end - begin);
    const std::size_t colon = token.find(':');
    const double re = std::stod(token.substr(0, colon));
    const double im = colon == std::string::npos ? 0.0 : std::stod(token.substr(colon + 1));
    coeff(i++) = std::complex<double>(re, im);
    if (end == std::string::npos) {
      begin = text.size() + 1;
      break;
    }
    begin = end + 1;
  }
  if (i != d || begin <= text.size())
    throw std::invalid_argument("state needs exactly d amplitudes: " + text);
  return spinbus::QuditAmplitudes::normalized(coeff);
}

// ---------------------------------------------------------------------------
// Output writing.

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_table(const RunConfig& run, const ordered_json& config_echo,
                 const Table& table) {
  std::string text;
  if (run.format == "csv") {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) text += ',';
      text += table.columns[c];
    }
    text += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) text += ',';
        text += format_value(row[c]);
      }
      text += '\n';
    }
  } else {
    ordered_json doc;
    doc["config"] = config_echo;
    doc["rows"] = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json record;
      for (std::size_t c = 0; c < row.size(); ++c) record[table.columns[c]] = row[c];
      doc["rows"].push_back(record);
    }
    text = doc.dump(2);
    text += '\n';
  }

  if (run.output == "-") {
    std::cout << text;
  } else {
    std::ofstream file(run.output, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output path " + run.output);
    file << text;
  }
}

ordered_json base_echo(const RunConfig& run) {
  ordered_json echo;
  echo["command"] = run.command;
  echo["bus_length"] = run.bus_length;
  echo["spin"] = run.spin;
  echo["dim"] = run.dim;
  echo["g_over_j"] = run.g_over_j;
  echo["h_over_j"] = run.h_over_j;
  echo["excitation_cap"] = run.excitation_cap;
  echo["format"] = run.format;
  return echo;
}

// ---------------------------------------------------------------------------
// Subcommands.

void run_modes(const RunConfig& run) {
  const spinbus::ChainConfig chain = run.chain();
  const spinbus::ModeSpectrum modes = spinbus::mode_spectrum(chain);
  double tau0 = std::numeric_limits<double>::quiet_NaN();
  if (chain.bus_length % 2 == 1 && chain.coupling_g > 0.0)
    tau0 = spinbus::optimal_time(chain);

  Table table;
  table.columns = {"k", "epsilon_k", "t_k", "tau0"};
  for (int k = 1; k <= chain.bus_length; ++k)
    table.rows.push_back(
        {double(k), modes.energies(k - 1), modes.couplings(k - 1), tau0});

  write_table(run, base_echo(run), table);
}

void run_transfer(const RunConfig& run) {
  const spinbus::ChainConfig chain = run.chain();
  const spinbus::ChainEngine engine(chain);
  const spinbus::QuditAmplitudes alpha = parse_state(run.state, chain.qudit_dim);

  std::vector<double> taus;
  if (!run.time_grid.empty())
    taus = parse_grid(run.time_grid).values();
  else
    taus = {resolve_time(run, chain)};

  // Even buses have no phase gate; fall back to the field correction alone.
  spinbus::FidelityOptions corrected{.apply_phase_gate = !run.no_phase_gate &&
                                                         chain.bus_length % 2 == 1,
                                     .apply_field_phase = !run.no_field_phase};
  const spinbus::FidelityOptions raw{false, false};

  Table table;
  table.columns = {"tau", "fidelity", "fidelity_uncorrected"};
  for (double tau : taus)
    table.rows.push_back({tau, spinbus::corrected_fidelity(engine, alpha, tau, corrected),
                          spinbus::corrected_fidelity(engine, alpha, tau, raw)});

  ordered_json echo = base_echo(run);
  echo["time"] = run.time;
  echo["time_grid"] = run.time_grid;
  echo["state"] = run.state;
  echo["phase_gate"] = corrected.apply_phase_gate;
  echo["field_phase"] = corrected.apply_field_phase;
  write_table(run, echo, table);
}

void run_avg_fidelity(const RunConfig& run) {
  if (run.method != "exact" && run.method != "mc")
    throw std::invalid_argument("method must be exact or mc");
  if (run.method == "mc" && !run.seed_given)
    throw std::invalid_argument("monte carlo runs need an explicit --seed");

  std::vector<double> axis;
  std::string axis_name;
  if (run.sweep == "none") {
    axis = {run.g_over_j};
    axis_name = "g_over_j";
  } else if (run.sweep == "g") {
    axis_name = "g_over_j";
    axis = run.grid.empty() ? std::vector<double>{run.g_over_j}
                            : parse_grid(run.grid).values();
  } else if (run.sweep == "s") {
    axis_name = "spin";
    axis = run.grid.empty() ? std::vector<double>{run.spin}
                            : parse_grid(run.grid).values();
  } else {
    throw std::invalid_argument("sweep must be none, g or s");
  }

  Table table;
  table.columns = {axis_name, "mean", "stderr"};
  for (double value : axis) {
    RunConfig point = run;
    if (axis_name == "g_over_j")
      point.g_over_j = value;
    else
      point.spin = value;
    const spinbus::ChainConfig chain = point.chain();
    const double tau = resolve_time(point, chain);
    const spinbus::ChainEngine engine(chain);
    if (run.method == "exact") {
      table.rows.push_back({value, spinbus::average_fidelity_exact(engine, tau), 0.0});
    } else {
      const spinbus::MonteCarloEstimate mc =
          spinbus::average_fidelity_mc(engine, tau, run.samples, run.seed);
      table.rows.push_back({value, mc.mean, mc.standard_error});
    }
  }

  ordered_json echo = base_echo(run);
  echo["time"] = run.time;
  echo["method"] = run.method;
  echo["samples"] = run.method == "mc" ? run.samples : 0;
  if (run.seed_given) echo["seed"] = run.seed;
  echo["sweep"] = run.sweep;
  echo["grid"] = run.grid;
  write_table(run, echo, table);
}

void run_entangle(const RunConfig& run) {
  std::vector<double> spins;
  if (run.sweep == "s" && !run.grid.empty())
    spins = parse_grid(run.grid).values();
  else if (run.sweep == "none" || run.sweep == "s")
    spins = {run.spin};
  else
    throw std::invalid_argument("entangle sweeps only over s");

  Table table;
  table.columns = {"spin", "efficiency"};
  for (double s : spins) {
    RunConfig point = run;
    point.spin = s;
    const spinbus::ChainConfig chain = point.chain();
    const double tau = resolve_time(point, chain);
    const bool gate = !run.no_phase_gate && chain.bus_length % 2 == 1;
    table.rows.push_back({s, spinbus::distribution_efficiency(chain, tau, gate)});
  }

  ordered_json echo = base_echo(run);
  echo["time"] = run.time;
  echo["sweep"] = run.sweep;
  echo["grid"] = run.grid;
  write_table(run, echo, table);
}

void run_thermal(const RunConfig& run) {
  if (run.samples > 0 && !run.seed_given)
    throw std::invalid_argument("monte carlo runs need an explicit --seed");

  // Field values in units of S J (scale-free ground-state condition).
  std::vector<double> fields_sj;
  if (!run.h_grid_over_sj.empty())
    fields_sj = parse_grid(run.h_grid_over_sj).values();
  else if (run.h_over_sj >= 0.0)
    fields_sj = {run.h_over_sj};
  else
    fields_sj = {4.0};

  const std::vector<double> temps = parse_grid(run.temp_grid).values();

  Table table;
  table.columns = {"temperature", "h_over_j", "spin", "mean_fidelity"};
  for (double h_sj : fields_sj) {
    RunConfig point = run;
    point.h_over_j = h_sj * 0.5 * std::llround(2.0 * run.spin) * 1.0;
    const spinbus::ChainConfig chain = point.chain();
    const double tau = resolve_time(point, chain);
    const int n_cut = run.n_cut >= 0
                          ? run.n_cut
                          : std::min(chain.twice_spin * chain.bus_length, 24);
    if (run.samples > 0) {
      for (double t : temps)
        table.rows.push_back(
            {t, chain.field_h, run.spin,
             spinbus::thermal_average_fidelity(
                 chain, t, tau, n_cut,
                 {.mc_samples = run.samples, .seed = run.seed}, run.tail_tol)});
    } else {
      const spinbus::ThermalSweep sweep(chain, tau, n_cut);
      for (double t : temps)
        table.rows.push_back(
            {t, chain.field_h, run.spin, sweep.average_at(t, run.tail_tol)});
    }
  }

  ordered_json echo = base_echo(run);
  echo["time"] = run.time;
  echo["temp_grid"] = run.temp_grid;
  echo["h_over_sj_grid"] =
      run.h_grid_over_sj.empty()
          ? (run.h_over_sj >= 0.0 ? std::to_string(run.h_over_sj) : "4")
          : run.h_grid_over_sj;
  echo["n_cut"] = run.n_cut;
  echo["samples"] = run.samples;
  if (run.seed_given) echo["seed"] = run.seed;
  echo["tail_tol"] = run.tail_tol;
  write_table(run, echo, table);
}

// ---------------------------------------------------------------------------
// Flag wiring.

std::optional<ordered_json> load_config_file(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
  }
  if (path.empty()) return std::nullopt;
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot read config file " + path);
  return ordered_json::parse(file);
}

template <typename T>
void fill_from_json(const ordered_json& doc, const char* key, T& value) {
  if (doc.contains(key)) value = doc.at(key).get<T>();
}

void apply_config_file(const ordered_json& doc, RunConfig& run) {
  fill_from_json(doc, "bus-length", run.bus_length);
  fill_from_json(doc, "spin", run.spin);
  fill_from_json(doc, "dim", run.dim);
  fill_from_json(doc, "g-over-j", run.g_over_j);
  fill_from_json(doc, "h-over-j", run.h_over_j);
  fill_from_json(doc, "excitation-cap", run.excitation_cap);
  fill_from_json(doc, "time", run.time);
  fill_from_json(doc, "time-grid", run.time_grid);
  fill_from_json(doc, "state", run.state);
  fill_from_json(doc, "no-phase-gate", run.no_phase_gate);
  fill_from_json(doc, "no-field-phase", run.no_field_phase);
  fill_from_json(doc, "method", run.method);
  fill_from_json(doc, "samples", run.samples);
  fill_from_json(doc, "sweep", run.sweep);
  fill_from_json(doc, "grid", run.grid);
  fill_from_json(doc, "temp-grid", run.temp_grid);
  fill_from_json(doc, "h-over-sj", run.h_over_sj);
  fill_from_json(doc, "h-grid-over-sj", run.h_grid_over_sj);
  fill_from_json(doc, "n-cut", run.n_cut);
  fill_from_json(doc, "tail-tol", run.tail_tol);
  fill_from_json(doc, "output", run.output);
  fill_from_json(doc, "format", run.format);
  if (doc.contains("seed")) {
    run.seed = doc.at("seed").get<std::uint64_t>();
    run.seed_given = true;
  }
}

void add_common_flags(CLI::App* cmd, RunConfig& run) {
  cmd->add_option("--config", "JSON config file; flags override its values")
      ->type_name("PATH");
  cmd->add_option("--bus-length", run.bus_length, "bus sites N");
  cmd->add_option("--spin", run.spin, "spin S, a multiple of 0.5");
  cmd->add_option("--dim", run.dim, "qudit dimension d");
  cmd->add_option("--g-over-j", run.g_over_j, "register-bus coupling g/J");
  cmd->add_option("--h-over-j", run.h_over_j, "Zeeman field h/J");
  cmd->add_option("--excitation-cap", run.excitation_cap,
                  "retained total excitation (-1: d-1)");
  cmd->add_option("--output", run.output, "output path, - for stdout");
  cmd->add_option("--format", run.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig run;

  CLI::App app{"qudit state transfer through a spin-S XX chain"};
  app.require_subcommand(1);

  CLI::App* transfer = app.add_subcommand("transfer", "fidelity of one sent state");
  CLI::App* avg = app.add_subcommand("avg-fidelity", "Haar-averaged fidelity");
  CLI::App* entangle = app.add_subcommand("entangle", "entanglement distribution");
  CLI::App* thermal = app.add_subcommand("thermal", "transfer off a thermal bus");
  CLI::App* modes = app.add_subcommand("modes", "bus mode energies and couplings");

  for (CLI::App* cmd : {transfer, avg, entangle, thermal, modes})
    add_common_flags(cmd, run);

  transfer->add_option("--time", run.time, "evolution time in 1/J, or 'optimal'");
  transfer->add_option("--time-grid", run.time_grid, "tau grid start:stop:count[:log]");
  transfer->add_option("--state", run.state, "uniform | basis:K | amplitude list");
  transfer->add_flag("--no-phase-gate", run.no_phase_gate, "skip the swap-phase gate");
  transfer->add_flag("--no-field-phase", run.no_field_phase, "skip the field phase");

  avg->add_option("--time", run.time, "evolution time in 1/J, or 'optimal'");
  avg->add_option("--method", run.method, "exact or mc");
  avg->add_option("--samples", run.samples, "monte carlo sample count");
  avg->add_option("--seed", run.seed, "monte carlo seed")
      ->each([&run](const std::string&) { run.seed_given = true; });
  avg->add_option("--sweep", run.sweep, "none, g or s");
  avg->add_option("--grid", run.grid, "sweep grid start:stop:count[:log]");

  entangle->add_option("--time", run.time, "evolution time in 1/J, or 'optimal'");
  entangle->add_option("--sweep", run.sweep, "none or s");
  entangle->add_option("--grid", run.grid, "spin grid start:stop:count[:log]");
  entangle->add_flag("--no-phase-gate", run.no_phase_gate, "skip the swap-phase gate");

  thermal->add_option("--time", run.time, "evolution time in 1/J, or 'optimal'");
  thermal->add_option("--temp-grid", run.temp_grid, "T/J grid start:stop:count[:log]");
  thermal->add_option("--h-over-sj", run.h_over_sj, "field in S J units");
  thermal->add_option("--h-grid-over-sj", run.h_grid_over_sj,
                      "field grid in S J units");
  thermal->add_option("--n-cut", run.n_cut, "bus excitation cut (-1: auto)");
  thermal->add_option("--samples", run.samples, "0 for exact averaging")
      ->default_val(0);
  thermal->add_option("--seed", run.seed, "monte carlo seed")
      ->each([&run](const std::string&) { run.seed_given = true; });
  thermal->add_option("--tail-tol", run.tail_tol, "truncation tail tolerance");

  try {
    if (auto doc = load_config_file(argc, argv)) apply_config_file(*doc, run);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInvalid;
  }

  try {
    run.command = app.get_subcommands().front()->get_name();
    if (run.chain().qudit_exceeds_spin())
      std::cerr << "warning: d > S; the protocol assumes d much smaller than 2S\n";

    if (run.command == "transfer")
      run_transfer(run);
    else if (run.command == "avg-fidelity")
      run_avg_fidelity(run);
    else if (run.command == "entangle")
      run_entangle(run);
    else if (run.command == "thermal")
      run_thermal(run);
    else
      run_modes(run);
  } catch (const spinbus::unsupported_configuration& e) {
    std::cerr << "unsupported configuration: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const spinbus::truncation_error& e) {
    std::cerr << "truncation failure: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
