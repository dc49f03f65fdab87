#include "magnonbath/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnonbath/dynamics.hpp"
#include "magnonbath/grid.hpp"
#include "magnonbath/model.hpp"
#include "magnonbath/oracle.hpp"
#include "magnonbath/perturb.hpp"
#include "magnonbath/selfenergy.hpp"
#include "magnonbath/spectral.hpp"
#include "magnonbath/zeno.hpp"

namespace magnonbath::cli {

namespace {

constexpr int kHelpShown = -1;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

// With --units J every energy-like flag and column is a multiple of J and
// every time-like one a multiple of 1/J; raw values are used internally.
struct UnitScale {
  double J = 1.0;
  bool in_j = false;

  double energy_in(double v) const { return in_j ? v * J : v; }
  double time_in(double v) const { return in_j ? v / J : v; }
  double energy_out(double v) const { return in_j ? v / J : v; }
  double time_out(double v) const { return in_j ? v * J : v; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RawOpts {
  int d = 1;
  double J = 1.0, g = 1.0, h = 0.0, S = 1.0, gz = 1.0, omega0 = 1.0;
  double temperature = 0.0;
  double alpha_plus = 1.0, alpha_minus = 0.0;
  std::string eps_grid, t_grid, tau_grid, h_grid, omega0_grid;
  double t_wait = 0.0;
  double nu = 0.0;
  int n_modes = 256;
  bool crossover = false;
  std::string units, format = "csv", out, config;
  std::string param, param_grid, run_name;
};

// Everything a handler needs, grids kept in display units so echoed columns
// match the request byte for byte.
struct Invocation {
  ModelParams p;
  UnitScale u;
  double temperature = 0.0;  // raw
  double omega0_display = 0.0;
  double alpha_plus = 1.0, alpha_minus = 0.0;
  std::vector<double> eps_grid, t_grid, tau_grid, h_grid, omega0_grid;
  double t_wait = 0.0;  // display
  double nu = 0.0;      // display; 0 selects closed forms where they exist
  int n_modes = 256;
  bool crossover = false;
  std::vector<std::string> warnings;
};

Invocation make_invocation(const RawOpts& raw) {
  Invocation inv;
  inv.u.J = raw.J;
  inv.u.in_j = (raw.units == "J");
  inv.p.d = raw.d;
  inv.p.J = raw.J;
  inv.p.g = inv.u.energy_in(raw.g);
  inv.p.h = inv.u.energy_in(raw.h);
  inv.p.omega0 = inv.u.energy_in(raw.omega0);
  inv.p.S = raw.S;
  inv.p.gamma_z = raw.gz;
  inv.temperature = inv.u.energy_in(raw.temperature);
  inv.omega0_display = raw.omega0;
  inv.alpha_plus = raw.alpha_plus;
  inv.alpha_minus = raw.alpha_minus;
  if (!raw.eps_grid.empty()) inv.eps_grid = grid::parse_grid(raw.eps_grid).values();
  if (!raw.t_grid.empty()) inv.t_grid = grid::parse_grid(raw.t_grid).values();
  if (!raw.tau_grid.empty()) inv.tau_grid = grid::parse_grid(raw.tau_grid).values();
  if (!raw.h_grid.empty()) inv.h_grid = grid::parse_grid(raw.h_grid).values();
  if (!raw.omega0_grid.empty())
    inv.omega0_grid = grid::parse_grid(raw.omega0_grid).values();
  inv.t_wait = raw.t_wait;
  inv.nu = raw.nu;
  inv.n_modes = raw.n_modes;
  inv.crossover = raw.crossover;
  return inv;
}

std::pair<double, double> unit_alphas(const Invocation& inv) {
  const double n2 = inv.alpha_plus * inv.alpha_plus +
                    inv.alpha_minus * inv.alpha_minus;
  if (!(n2 > 0.0))
    throw DomainError("alpha-plus and alpha-minus cannot both vanish");
  const double s = 1.0 / std::sqrt(n2);
  return {inv.alpha_plus * s, inv.alpha_minus * s};
}

Table cmd_self_energy(Invocation& inv) {
  inv.p.validate();
  Table t;
  t.columns = {"eps", "re", "im", "a"};
  const bool numeric = inv.nu > 0.0 || inv.p.d == 3;
  const double nu_raw =
      inv.nu > 0.0 ? inv.u.energy_in(inv.nu) : 1e-3 * inv.p.J;
  for (double ed : inv.eps_grid) {
    const double eps = inv.u.energy_in(ed);
    try {
      const std::complex<double> s =
          numeric ? selfenergy::sigma_numeric(inv.p, eps, nu_raw)
                  : selfenergy::sigma_exact(inv.p, eps);
      const double de = eps - inv.p.omega0 - s.real();
      const double a = -2.0 * s.imag() / (de * de + s.imag() * s.imag());
      t.rows.push_back({ed, inv.u.energy_out(s.real()),
                        inv.u.energy_out(s.imag()), inv.u.time_out(a)});
    } catch (const SingularityError& e) {
      inv.warnings.push_back("self-energy: skipped eps = " +
                             grid::format_number(ed) + " (" + e.what() + ")");
    }
  }
  return t;
}

Table cmd_bound_states(Invocation& inv) {
  const auto states = spectral::find_bound_states(inv.p);
  Table t;
  t.columns = {"energy", "weight"};
  for (const auto& st : states)
    t.rows.push_back({inv.u.energy_out(st.energy), st.weight});
  return t;
}

Table cmd_amplitude(Invocation& inv) {
  const dynamics::ExactDynamics dyn(inv.p);
  Table t;
  t.columns = {"t", "re", "im", "norm"};
  for (double td : inv.t_grid) {
    const std::complex<double> phi = dyn.amplitude(inv.u.time_in(td));
    t.rows.push_back({td, phi.real(), phi.imag(), std::norm(phi)});
  }
  return t;
}

Table cmd_rates(Invocation& inv) {
  const dynamics::ExactDynamics dyn(inv.p);
  Table t;
  t.columns = {"t", "kappa", "xi", "singular"};
  for (double td : inv.t_grid) {
    const auto r = dyn.rates(inv.u.time_in(td));
    t.rows.push_back({td, inv.u.energy_out(r.kappa), inv.u.energy_out(r.xi),
                      r.singular ? 1.0 : 0.0});
  }
  return t;
}

Table cmd_evolve(Invocation& inv) {
  const dynamics::ExactDynamics dyn(inv.p);
  const auto [ap, am] = unit_alphas(inv);
  Table t;
  t.columns = {"t", "rho11", "re_rho12", "im_rho12", "abs_rho12"};
  for (double td : inv.t_grid) {
    const auto dm = dyn.evolve(ap, am, inv.u.time_in(td));
    t.rows.push_back({td, dm.rho11, dm.rho12.real(), dm.rho12.imag(),
                      std::abs(dm.rho12)});
  }
  return t;
}

Table cmd_perturbative(Invocation& inv) {
  const perturb::ThermalParams tp{inv.temperature};
  const perturb::WeakRates wr(inv.p, tp);
  if (tp.temperature > 0.0) {
    const double ratio = perturb::spin_wave_ratio(inv.p, tp);
    if (ratio >= 0.1)
      inv.warnings.push_back("perturbative: spin-wave validity ratio " +
                             grid::format_number(ratio) + " exceeds 0.1");
  }
  const auto [ap, am] = unit_alphas(inv);
  dynamics::DensityMatrix2 rho0;
  rho0.rho11 = ap * ap;
  rho0.rho12 = ap * am;
  Table t;
  t.columns = {"t",       "kappa",     "xi",       "kappa0",   "xi0",
               "rho11",   "re_rho12",  "im_rho12", "abs_rho12"};
  for (double td : inv.t_grid) {
    const double tr = inv.u.time_in(td);
    const auto r = wr.rates(tr);
    const auto r0 = wr.rates_zero_temperature(tr);
    const auto dm = wr.evolve(rho0, tr);
    t.rows.push_back({td, inv.u.energy_out(r.kappa), inv.u.energy_out(r.xi),
                      inv.u.energy_out(r0.kappa), inv.u.energy_out(r0.xi),
                      dm.rho11, dm.rho12.real(), dm.rho12.imag(),
                      std::abs(dm.rho12)});
  }
  return t;
}

Table cmd_markov(Invocation& inv) {
  const auto ml = perturb::markov_limits(inv.p);
  Table t;
  t.columns = {"kappa", "xi", "kappa_divergent", "xi_divergent"};
  t.rows.push_back({ml.kappa_divergent ? kNaN : inv.u.energy_out(ml.kappa),
                    ml.xi_divergent ? kNaN : inv.u.energy_out(ml.xi),
                    ml.kappa_divergent ? 1.0 : 0.0,
                    ml.xi_divergent ? 1.0 : 0.0});
  return t;
}

Table cmd_critical_field(Invocation& inv) {
  std::vector<double> omega0s = inv.omega0_grid;
  if (omega0s.empty()) omega0s.push_back(inv.omega0_display);
  std::vector<double> h_raw;
  h_raw.reserve(inv.h_grid.size());
  for (double hd : inv.h_grid) h_raw.push_back(inv.u.energy_in(hd));
  const double t_wait_raw = inv.u.time_in(inv.t_wait);
  Table t;
  t.columns = {"omega0", "h_cri", "found"};
  for (double wd : omega0s) {
    ModelParams p2 = inv.p;
    p2.omega0 = inv.u.energy_in(wd);
    try {
      const auto cf = dynamics::critical_field(p2, h_raw, t_wait_raw);
      t.rows.push_back({wd,
                        cf.h_cri ? inv.u.energy_out(*cf.h_cri) : kNaN,
                        cf.h_cri ? 1.0 : 0.0});
    } catch (const SingularityError& e) {
      inv.warnings.push_back("critical-field: skipped omega0 = " +
                             grid::format_number(wd) + " (" + e.what() + ")");
    }
  }
  return t;
}

Table cmd_zeno(Invocation& inv) {
  Table t;
  if (inv.crossover) {
    const auto ts = zeno::crossover_tau(inv.p);
    t.columns = {"tau_star", "found"};
    t.rows.push_back({ts ? inv.u.time_out(*ts) : kNaN, ts ? 1.0 : 0.0});
    return t;
  }
  const dynamics::ExactDynamics dyn(inv.p);
  const auto mk = perturb::markov_limits(inv.p);
  const double mark =
      mk.kappa_divergent ? kNaN : inv.u.energy_out(mk.kappa);
  t.columns = {"tau", "kappa_eff", "kappa_eff_weak", "kappa_mark",
               "saturated"};
  for (double td : inv.tau_grid) {
    const double tau = inv.u.time_in(td);
    const auto er = zeno::effective_rate(dyn, tau);
    const double wk = zeno::weak_effective_rate(inv.p, tau);
    t.rows.push_back({td, inv.u.energy_out(er.value), inv.u.energy_out(wk),
                      mark, er.saturated ? 1.0 : 0.0});
  }
  return t;
}

Table cmd_oracle_compare(Invocation& inv) {
  const dynamics::ExactDynamics dyn(inv.p);
  const oracle::FiniteLattice fl(inv.p, {inv.n_modes});
  Table t;
  t.columns = {"t", "re_exact", "im_exact", "re_finite", "im_finite",
               "abs_err"};
  for (double td : inv.t_grid) {
    const double tr = inv.u.time_in(td);
    const std::complex<double> a = dyn.amplitude(tr);
    const std::complex<double> b = fl.amplitude(tr);
    t.rows.push_back(
        {td, a.real(), a.imag(), b.real(), b.imag(), std::abs(a - b)});
  }
  return t;
}

bool is_command(const std::string& name) {
  static const std::set<std::string> names = {
      "self-energy", "bound-states",   "amplitude", "rates",
      "evolve",      "perturbative",   "markov",    "critical-field",
      "zeno",        "oracle-compare", "sweep"};
  return names.count(name) > 0;
}

void usage(std::ostream& os) {
  os << "usage: magnon-bath <subcommand> [flags]\n"
        "\n"
        "subcommands:\n"
        "  self-energy     Sigma(eps) and the spectral density on --eps-grid\n"
        "  bound-states    discrete levels outside the band and their weights\n"
        "  amplitude       excited-state amplitude phi(t) on --t-grid\n"
        "  rates           exact decay rate and frequency shift on --t-grid\n"
        "  evolve          exact density-matrix evolution on --t-grid\n"
        "  perturbative    weak-coupling rates and evolution, T >= 0\n"
        "  markov          long-time decay rate and level shift\n"
        "  critical-field  field minimising the surviving population\n"
        "  zeno            effective decay rate under repeated measurement\n"
        "  oracle-compare  continuum amplitude against a finite lattice\n"
        "  sweep           repeat a subcommand over a parameter grid\n"
        "\n"
        "common flags: --d --J --g --h --S --gz --omega0 --units J\n"
        "              --format csv|json --out FILE --config FILE.json\n"
        "run 'magnon-bath <subcommand> --help' for the full flag list\n";
}

// Replaces --config FILE with the flags stored in the file (a flat JSON
// object; explicit flags win over config values).
std::vector<std::string> expand_config(std::vector<std::string> tokens) {
  std::string path;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tk = tokens[i];
    if (tk == "--config") {
      if (i + 1 >= tokens.size())
        throw DomainError("--config needs a file path");
      path = tokens[++i];
    } else if (tk.rfind("--config=", 0) == 0) {
      path = tk.substr(9);
    } else {
      out.push_back(tk);
    }
  }
  if (path.empty()) return out;
  std::ifstream file(path);
  if (!file) throw DomainError("cannot read config file: " + path);
  nlohmann::json cfg;
  try {
    file >> cfg;
  } catch (const std::exception& e) {
    throw DomainError(std::string("config file: ") + e.what());
  }
  if (!cfg.is_object())
    throw DomainError("config must be a flat JSON object of flag values");
  auto has_flag = [&](const std::string& flag) {
    for (const std::string& tk : out)
      if (tk == flag || tk.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (const auto& item : cfg.items()) {
    const std::string flag = "--" + item.key();
    if (has_flag(flag)) continue;
    const nlohmann::json& val = item.value();
    if (val.is_boolean()) {
      if (val.get<bool>()) out.push_back(flag);
    } else if (val.is_string()) {
      out.push_back(flag);
      out.push_back(val.get<std::string>());
    } else if (val.is_number_integer()) {
      out.push_back(flag);
      out.push_back(std::to_string(val.get<long long>()));
    } else if (val.is_number()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", val.get<double>());
      out.push_back(flag);
      out.push_back(buf);
    } else {
      throw DomainError("config value for '" + item.key() +
                        "' must be a scalar");
    }
  }
  return out;
}

void strip_flag(std::vector<std::string>& tokens, const std::string& flag) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == flag) {
      if (i + 1 < tokens.size() && tokens[i + 1].rfind("--", 0) != 0) ++i;
      continue;
    }
    if (tokens[i].rfind(flag + "=", 0) == 0) continue;
    kept.push_back(tokens[i]);
  }
  tokens = std::move(kept);
}

int compute_table(const std::string& name, std::vector<std::string> tokens,
                  Table& result, std::string& format, std::string& outfile,
                  std::ostream& out, std::ostream& err, int depth);

int run_sweep(const RawOpts& raw, std::vector<std::string> base,
              Table& result, std::ostream& err, int depth) {
  if (depth > 0 || raw.run_name == "sweep") {
    err << "sweep cannot run another sweep\n";
    return 2;
  }
  if (!is_command(raw.run_name)) {
    err << "unknown --run subcommand: " << raw.run_name << "\n";
    return 2;
  }
  static const std::set<std::string> sweepable = {"omega0", "g",  "h",
                                                  "S",      "gz", "temperature"};
  if (!sweepable.count(raw.param)) {
    err << "--param must be one of omega0,g,h,S,gz,temperature\n";
    return 2;
  }
  std::vector<double> values;
  try {
    values = grid::parse_grid(raw.param_grid).values();
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return 2;
  }
  strip_flag(base, "--" + raw.param);

  const std::size_t n_pts = values.size();
  std::vector<Table> tables(n_pts);
  std::vector<std::string> errors(n_pts);
  std::vector<int> codes(n_pts, 0);

  std::size_t pool = std::thread::hardware_concurrency();
  if (pool == 0) pool = 1;
  if (const char* cap = std::getenv("MAGNON_BATH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && v > 0) pool = std::min<std::size_t>(pool, static_cast<std::size_t>(v));
  }
  pool = std::max<std::size_t>(1, std::min(pool, n_pts));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i; (i = next.fetch_add(1)) < n_pts;) {
      std::vector<std::string> pt = base;
      pt.push_back("--" + raw.param);
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", values[i]);
      pt.push_back(buf);
      if (!raw.units.empty()) {
        pt.push_back("--units");
        pt.push_back(raw.units);
      }
      std::ostringstream devnull, perr;
      std::string f, o;
      codes[i] = compute_table(raw.run_name, std::move(pt), tables[i], f, o,
                               devnull, perr, depth + 1);
      errors[i] = perr.str();
    }
  };
  std::vector<std::thread> workers;
  for (std::size_t w = 1; w < pool; ++w) workers.emplace_back(worker);
  worker();
  for (std::thread& w : workers) w.join();

  bool any = false;
  for (std::size_t i = 0; i < n_pts; ++i) {
    if (!errors[i].empty()) err << errors[i];
    if (codes[i] != 0) {
      err << "sweep: skipped " << raw.param << " = "
          << grid::format_number(values[i]) << "\n";
      continue;
    }
    if (!any) {
      result.columns.clear();
      result.columns.push_back(raw.param);
      result.columns.insert(result.columns.end(), tables[i].columns.begin(),
                            tables[i].columns.end());
      any = true;
    }
    for (const auto& row : tables[i].rows) {
      std::vector<double> merged;
      merged.reserve(row.size() + 1);
      merged.push_back(values[i]);
      merged.insert(merged.end(), row.begin(), row.end());
      result.rows.push_back(std::move(merged));
    }
  }
  if (!any) {
    err << "sweep: every point failed\n";
    return 3;
  }
  return 0;
}

int compute_table(const std::string& name, std::vector<std::string> tokens,
                  Table& result, std::string& format, std::string& outfile,
                  std::ostream& out, std::ostream& err, int depth) {
  RawOpts raw;
  CLI::App app{"", name};
  app.set_help_flag("--help", "print this help");  // frees -h / --h for the field
  app.add_option("--units", raw.units, "input/output unit of energies")
      ->check(CLI::IsMember({"J"}));
  app.add_option("--format", raw.format, "table format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", raw.out, "write the table to this file");
  app.add_option("--config", raw.config,
                 "flat JSON file of flag values (flags win)");
  const bool sweep = (name == "sweep");
  if (sweep) {
    app.allow_extras();
    app.add_option("--param", raw.param, "parameter to sweep")->required();
    app.add_option("--param-grid", raw.param_grid, "start:stop:step")
        ->required();
    app.add_option("--run", raw.run_name, "subcommand to repeat")->required();
  } else {
    app.add_option("--d", raw.d, "lattice dimension")->check(CLI::Range(1, 3));
    app.add_option("--J", raw.J, "exchange energy");
    app.add_option("--g", raw.g, "impurity coupling");
    app.add_option("--h", raw.h, "uniform field");
    app.add_option("--S", raw.S, "spin length");
    app.add_option("--gz", raw.gz, "axial anisotropy");
    app.add_option("--omega0", raw.omega0, "impurity level spacing");
    if (name == "self-energy") {
      app.add_option("--eps-grid", raw.eps_grid, "energy grid")->required();
      app.add_option("--nu", raw.nu, "resolvent broadening (forces quadrature)");
    } else if (name == "amplitude" || name == "rates") {
      app.add_option("--t-grid", raw.t_grid, "time grid")->required();
    } else if (name == "evolve") {
      app.add_option("--t-grid", raw.t_grid, "time grid")->required();
      app.add_option("--alpha-plus", raw.alpha_plus, "initial excited amplitude");
      app.add_option("--alpha-minus", raw.alpha_minus, "initial ground amplitude");
    } else if (name == "perturbative") {
      app.add_option("--t-grid", raw.t_grid, "time grid")->required();
      app.add_option("--temperature", raw.temperature, "bath temperature");
      app.add_option("--alpha-plus", raw.alpha_plus, "initial excited amplitude");
      app.add_option("--alpha-minus", raw.alpha_minus, "initial ground amplitude");
    } else if (name == "critical-field") {
      app.add_option("--h-grid", raw.h_grid, "field scan grid")->required();
      app.add_option("--t-wait", raw.t_wait, "readout time")->required();
      app.add_option("--omega0-grid", raw.omega0_grid,
                     "level spacings to scan (default: --omega0)");
    } else if (name == "zeno") {
      app.add_option("--tau-grid", raw.tau_grid, "measurement intervals");
      app.add_flag("--crossover", raw.crossover,
                   "report the Zeno/inverse-Zeno crossover time instead");
    } else if (name == "oracle-compare") {
      app.add_option("--t-grid", raw.t_grid, "time grid")->required();
      app.add_option("--n-modes", raw.n_modes, "lattice sites per dimension")
          ->check(CLI::PositiveNumber);
    }
  }

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(std::move(tokens));
  } catch (const DomainError& e) {
    err << e.what() << "\n";
    return 2;
  }
  std::reverse(expanded.begin(), expanded.end());
  try {
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHelpShown;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHelpShown;
  } catch (const CLI::ParseError& e) {
    err << name << ": " << e.what() << "\n";
    return 2;
  }
  format = raw.format;
  outfile = raw.out;

  if (sweep) return run_sweep(raw, app.remaining(), result, err, depth);

  if (name == "zeno" && !raw.crossover && raw.tau_grid.empty()) {
    err << "zeno: --tau-grid is required unless --crossover is given\n";
    return 2;
  }

  Invocation inv;
  try {
    inv = make_invocation(raw);
  } catch (const DomainError& e) {
    err << name << ": " << e.what() << "\n";
    return 2;
  }
  try {
    if (name == "self-energy") result = cmd_self_energy(inv);
    else if (name == "bound-states") result = cmd_bound_states(inv);
    else if (name == "amplitude") result = cmd_amplitude(inv);
    else if (name == "rates") result = cmd_rates(inv);
    else if (name == "evolve") result = cmd_evolve(inv);
    else if (name == "perturbative") result = cmd_perturbative(inv);
    else if (name == "markov") result = cmd_markov(inv);
    else if (name == "critical-field") result = cmd_critical_field(inv);
    else if (name == "zeno") result = cmd_zeno(inv);
    else result = cmd_oracle_compare(inv);
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return 3;
  }
  for (const std::string& w : inv.warnings) err << w << "\n";
  return 0;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << grid::format_number(row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size() && i < row.size(); ++i)
      rec[t.columns[i]] = row[i];
    records.push_back(std::move(rec));
  }
  os << records.dump(2) << '\n';
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    usage(err);
    return 2;
  }
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    usage(out);
    return 0;
  }
  const std::string name = args[0];
  if (!is_command(name)) {
    err << "unknown subcommand: " << name << "\n";
    usage(err);
    return 2;
  }
  Table table;
  std::string format = "csv", outfile;
  const int code =
      compute_table(name, {args.begin() + 1, args.end()}, table, format,
                    outfile, out, err, 0);
  if (code == kHelpShown) return 0;
  if (code != 0) return code;
  std::ofstream file;
  std::ostream* sink = &out;
  if (!outfile.empty()) {
    file.open(outfile);
    if (!file) {
      err << "cannot open output file: " << outfile << "\n";
      return 2;
    }
    sink = &file;
  }
  if (format == "json")
    write_json(table, *sink);
  else
    write_csv(table, *sink);
  return 0;
}

}  // namespace magnonbath::cli
