#pragma once

// boundstate command-line front end: solve / scan / compare.
//
// Exit codes: 0 success, 1 configuration error, 2 solver diagnostic,
// 3 comparison gate exceeded.

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boundstate/boundstate.hpp"

namespace boundstate::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kConfigError = 1, kSolverDiagnostic = 2, kGateExceeded = 3 };

/// Malformed or inconsistent configuration; names the offending field.
class config_error : public std::runtime_error {
public:
  config_error(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

struct RunConfig {
  std::string kind;
  std::optional<double> half_width;
  std::optional<double> v0;
  std::optional<double> lambda;
  std::vector<double> coefficients;
  std::vector<Sample> samples;
  std::optional<std::pair<double, double>> domain;

  std::string method = "discrete";
  std::string mode = "exact";
  std::size_t n = 4000;
  std::size_t mesh_n = 8000;
  std::size_t quad_nodes = 96;
  bool closed_form_phase = false;
  std::optional<std::pair<double, double>> window;
  std::size_t grid_points = 1200;
  double tol_e = 1e-9;
  std::optional<std::size_t> count;
  std::string format = "json";

  std::vector<std::string> methods;
  std::optional<double> gate;
  bool timing = false;
};

// ---------------------------------------------------------------------------
// formatting

/// Value rounded to 12 significant digits, so JSON and CSV agree.
inline double round12(double v) {
  if (!std::isfinite(v))
    return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline std::string fmt12(double v) {
  if (std::isnan(v))
    return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline json number(double v) { return std::isfinite(v) ? json(round12(v)) : json(nullptr); }

inline json level_json(const EnergyLevel& l) {
  return json{{"index", l.index},
              {"energy", number(l.energy)},
              {"residual", number(l.residual)},
              {"bracket_width", number(l.bracket_width)},
              {"method", to_string(l.method)}};
}

inline std::string levels_csv_header() { return "index,energy,residual,method\n"; }

inline std::string level_csv_row(const EnergyLevel& l) {
  return std::to_string(l.index) + "," + fmt12(l.energy) + "," + fmt12(l.residual) + "," + to_string(l.method) + "\n";
}

// ---------------------------------------------------------------------------
// configuration

inline std::vector<Sample> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw config_error("samples-file", "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw config_error("samples-file", "empty file");
  std::string header;
  for (char ch : line)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      header += ch;
  if (header != "x,v")
    throw config_error("samples-file", "header must be 'x,v'");
  std::vector<Sample> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::istringstream row(line);
    Sample s{};
    char comma = 0;
    if (!(row >> s.x >> comma >> s.v) || comma != ',')
      throw config_error("samples-file", "malformed row at line " + std::to_string(lineno));
    out.push_back(s);
  }
  return out;
}

inline std::pair<double, double> json_pair(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw config_error(field, "expected [min, max]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class T>
T json_get(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw config_error(field, "wrong type");
  }
}

/// Fields of a JSON config file applied onto cfg.
inline void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object())
    throw config_error("config", "top level must be an object");
  if (j.contains("potential")) {
    const auto& p = j["potential"];
    if (!p.is_object())
      throw config_error("potential", "must be an object");
    if (p.contains("kind"))
      cfg.kind = json_get<std::string>(p["kind"], "potential.kind");
    if (p.contains("L"))
      cfg.half_width = json_get<double>(p["L"], "potential.L");
    if (p.contains("v0"))
      cfg.v0 = json_get<double>(p["v0"], "potential.v0");
    if (p.contains("lambda"))
      cfg.lambda = json_get<double>(p["lambda"], "potential.lambda");
    if (p.contains("coefficients"))
      cfg.coefficients = json_get<std::vector<double>>(p["coefficients"], "potential.coefficients");
    if (p.contains("samples")) {
      cfg.samples.clear();
      for (const auto& row : p["samples"]) {
        const auto xv = json_pair(row, "potential.samples");
        cfg.samples.push_back({xv.first, xv.second});
      }
    }
  }
  if (j.contains("domain"))
    cfg.domain = json_pair(j["domain"], "domain");
  if (j.contains("window"))
    cfg.window = json_pair(j["window"], "window");
  if (j.contains("method"))
    cfg.method = json_get<std::string>(j["method"], "method");
  if (j.contains("n"))
    cfg.n = json_get<std::size_t>(j["n"], "n");
  if (j.contains("mesh_n"))
    cfg.mesh_n = json_get<std::size_t>(j["mesh_n"], "mesh_n");
  if (j.contains("quad_nodes"))
    cfg.quad_nodes = json_get<std::size_t>(j["quad_nodes"], "quad_nodes");
  if (j.contains("grid_points"))
    cfg.grid_points = json_get<std::size_t>(j["grid_points"], "grid_points");
  if (j.contains("tol_e"))
    cfg.tol_e = json_get<double>(j["tol_e"], "tol_e");
  if (j.contains("format"))
    cfg.format = json_get<std::string>(j["format"], "format");
  if (j.contains("count"))
    cfg.count = json_get<std::size_t>(j["count"], "count");
}

inline PotentialSpec build_potential(const RunConfig& cfg) {
  auto need = [](const std::optional<double>& v, const char* field) {
    if (!v)
      throw config_error(field, "required for this potential");
    return *v;
  };
  auto domain = [&]() {
    if (!cfg.domain)
      throw config_error("domain", "required for potential '" + cfg.kind + "'");
    return *cfg.domain;
  };
  try {
    if (cfg.kind == "square_well") {
      const double l = need(cfg.half_width, "L");
      if (cfg.domain && (cfg.domain->first != -l || cfg.domain->second != l))
        throw config_error("domain", "square well domain must be [-L, L]");
      return PotentialSpec::square_well(l);
    }
    if (cfg.kind == "harmonic") {
      const auto [a, b] = domain();
      return PotentialSpec::harmonic(a, b);
    }
    if (cfg.kind == "morse") {
      const auto [a, b] = domain();
      return PotentialSpec::morse(need(cfg.v0, "v0"), need(cfg.lambda, "lambda"), a, b);
    }
    if (cfg.kind == "polynomial") {
      const auto [a, b] = domain();
      return PotentialSpec::polynomial(cfg.coefficients, a, b);
    }
    if (cfg.kind == "tabulated") {
      if (cfg.domain)
        return PotentialSpec::tabulated(cfg.samples, cfg.domain->first, cfg.domain->second);
      return PotentialSpec::tabulated(cfg.samples);
    }
  } catch (const std::invalid_argument& e) {
    throw config_error("potential", e.what());
  }
  if (cfg.kind.empty())
    throw config_error("potential", "missing potential kind");
  throw config_error("potential", "unknown kind '" + cfg.kind + "'");
}

inline Method parse_method(const std::string& name, const char* field = "method") {
  if (name == "discrete")
    return Method::discrete;
  if (name == "integral")
    return Method::integral;
  if (name == "oracle")
    return Method::oracle;
  if (name == "closed")
    return Method::closed_form;
  throw config_error(field, "unknown method '" + name + "'");
}

inline RootConfig root_config(const RunConfig& cfg) {
  if (!cfg.window)
    throw config_error("window", "required for this method");
  RootConfig rc{cfg.window->first, cfg.window->second, cfg.grid_points, cfg.tol_e, 200};
  try {
    rc.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error("window", e.what());
  }
  return rc;
}

inline void validate(const RunConfig& cfg) {
  if (cfg.mesh_n < 3)
    throw config_error("mesh_n", "must be at least 3");
  if (cfg.quad_nodes == 0)
    throw config_error("quad_nodes", "must be positive");
  if (cfg.grid_points < 2)
    throw config_error("grid_points", "must be at least 2");
  if (!(cfg.tol_e > 0.0))
    throw config_error("tol_e", "must be positive");
  if (cfg.format != "json" && cfg.format != "csv")
    throw config_error("format", "must be json or csv");
  if (cfg.mode != "exact" && cfg.mode != "simplified")
    throw config_error("mode", "must be exact or simplified");
  if (cfg.window && !(cfg.window->first < cfg.window->second))
    throw config_error("window", "requires E_min < E_max");
  if (cfg.count && *cfg.count == 0)
    throw config_error("count", "must be positive");
}

// ---------------------------------------------------------------------------
// solving

struct MethodRun {
  MethodLevels levels;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

inline std::vector<EnergyLevel> window_filter(std::vector<EnergyLevel> levels, const RunConfig& cfg) {
  if (cfg.count && levels.size() > *cfg.count)
    levels.resize(*cfg.count);
  if (!cfg.count && cfg.window) {
    std::vector<EnergyLevel> kept;
    for (const auto& l : levels)
      if (l.energy >= cfg.window->first && l.energy <= cfg.window->second)
        kept.push_back(l);
    levels = std::move(kept);
  }
  for (std::size_t i = 0; i < levels.size(); ++i)
    levels[i].index = i;
  return levels;
}

inline MethodRun closed_form(const PotentialSpec& spec, const RunConfig& cfg) {
  if (!cfg.count && !cfg.window)
    throw config_error("count", "closed method needs --count or --window");
  MethodRun run;
  auto upto = [&](auto level_at) {
    // enough levels to pass the window top
    std::size_t k = 1;
    while (level_at(k - 1) <= cfg.window->second && k < 1000000)
      ++k;
    return k;
  };
  if (const auto* sw = std::get_if<SquareWell>(&spec.kind())) {
    const double l = sw->half_width;
    const std::size_t k = cfg.count ? *cfg.count : upto([&](std::size_t i) {
      const double q = static_cast<double>(i + 1) * std::numbers::pi / (2.0 * l);
      return q * q;
    });
    run.levels.levels = square_well_levels(l, k).levels;
  } else if (spec.is<Harmonic>()) {
    const std::size_t k = cfg.count ? *cfg.count : upto([](std::size_t i) { return 2.0 * static_cast<double>(i) + 1.0; });
    run.levels.levels = ho_levels(k).levels;
  } else if (const auto* m = std::get_if<Morse>(&spec.kind())) {
    const std::size_t k = cfg.count ? *cfg.count : morse_bound_count(m->depth, m->range);
    const auto s = morse_levels(m->depth, m->range, k);
    run.levels.levels = s.levels;
    if (s.truncated)
      run.notes.push_back("Morse closed form holds only " + std::to_string(s.levels.size()) + " bound states");
  } else {
    throw config_error("method", "no closed form for potential '" + spec.name() + "'");
  }
  run.levels.levels = window_filter(std::move(run.levels.levels), cfg);
  return run;
}

inline MethodRun run_method(const PotentialSpec& spec, const RunConfig& cfg, Method method) {
  const auto t0 = std::chrono::steady_clock::now();
  MethodRun run;
  auto absorb = [&](RootSearch&& rs) {
    run.levels.levels = std::move(rs.levels);
    for (const auto& f : rs.failures) {
      std::ostringstream msg;
      msg << "[" << f.e_lo << ", " << f.e_hi << "] " << f.message;
      run.failures.push_back(msg.str());
    }
    run.notes = std::move(rs.notes);
  };
  switch (method) {
  case Method::discrete:
    absorb(solve_discrete(spec, root_config(cfg),
                          {cfg.n, cfg.mode == "simplified" ? CouplingMode::simplified : CouplingMode::exact}));
    break;
  case Method::integral: {
    IntegralOptions opt;
    opt.quad_nodes = cfg.quad_nodes;
    opt.closed_form_phase = cfg.closed_form_phase;
    absorb(solve_integral(spec, root_config(cfg), opt));
    break;
  }
  case Method::oracle:
    if (cfg.count) {
      if (*cfg.count > cfg.mesh_n)
        throw config_error("count", "exceeds mesh_n");
      run.levels.levels = fd_eigenvalues(spec, cfg.mesh_n, *cfg.count, cfg.tol_e);
    } else {
      const auto rc = root_config(cfg);
      run.levels.levels = fd_eigenvalues_in_window(spec, cfg.mesh_n, rc.e_min, rc.e_max, cfg.tol_e);
    }
    break;
  case Method::closed_form:
    run = closed_form(spec, cfg);
    break;
  }
  run.levels.method = to_string(method);
  run.levels.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

inline json potential_json(const RunConfig& cfg, const PotentialSpec& spec) {
  json p{{"kind", spec.name()}};
  if (cfg.half_width)
    p["L"] = number(*cfg.half_width);
  if (spec.is<Morse>()) {
    p["v0"] = number(*cfg.v0);
    p["lambda"] = number(*cfg.lambda);
  }
  if (spec.is<Polynomial>()) {
    json c = json::array();
    for (double v : cfg.coefficients)
      c.push_back(number(v));
    p["coefficients"] = c;
  }
  if (spec.is<Tabulated>())
    p["samples"] = cfg.samples.size();
  return p;
}

inline json header_json(const char* command, const RunConfig& cfg, const PotentialSpec& spec) {
  json j{{"command", command}, {"potential", potential_json(cfg, spec)},
         {"domain", json::array({number(spec.a()), number(spec.b())})}};
  if (cfg.window)
    j["window"] = json::array({number(cfg.window->first), number(cfg.window->second)});
  return j;
}

inline int solve_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto spec = build_potential(cfg);
  const auto method = parse_method(cfg.method);
  const auto run = run_method(spec, cfg, method);
  if (cfg.format == "csv") {
    out << levels_csv_header();
    for (const auto& l : run.levels.levels)
      out << level_csv_row(l);
  } else {
    json j = header_json("solve", cfg, spec);
    j["method"] = to_string(method);
    json levels = json::array();
    for (const auto& l : run.levels.levels)
      levels.push_back(level_json(l));
    j["levels"] = levels;
    j["failures"] = run.failures;
    j["notes"] = run.notes;
    if (cfg.timing)
      j["seconds"] = run.levels.seconds;
    out << j.dump(2) << "\n";
  }
  for (const auto& f : run.failures)
    err << "diagnostic: " << f << "\n";
  return run.failures.empty() ? kOk : kSolverDiagnostic;
}

inline int scan_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto spec = build_potential(cfg);
  const auto method = parse_method(cfg.method);
  if (method != Method::discrete && method != Method::integral)
    throw config_error("method", "scan supports discrete or integral");
  const auto rc = root_config(cfg);

  std::vector<std::pair<double, std::optional<double>>> rows;
  std::vector<std::string> failures;
  auto sample_all = [&](auto&& f) {
    for (double e : energy_grid(rc)) {
      try {
        rows.emplace_back(e, f(e));
      } catch (const no_allowed_region_error&) {
        rows.emplace_back(e, std::nullopt);
      } catch (const solver_error& ex) {
        rows.emplace_back(e, std::nullopt);
        failures.push_back(ex.what());
      }
    }
  };
  if (method == Method::discrete) {
    const DiscreteCondition cond(spec, rc,
                                 {cfg.n, cfg.mode == "simplified" ? CouplingMode::simplified : CouplingMode::exact});
    sample_all(cond);
  } else {
    IntegralOptions opt;
    opt.quad_nodes = cfg.quad_nodes;
    opt.closed_form_phase = cfg.closed_form_phase;
    sample_all(IntegralCondition(spec, opt));
  }

  auto sign = [](const std::optional<double>& v) { return !v ? 0 : (*v > 0.0) - (*v < 0.0); };
  if (cfg.format == "csv") {
    out << "energy,value,sign\n";
    for (const auto& [e, v] : rows)
      out << fmt12(e) << "," << (v ? fmt12(*v) : std::string("nan")) << "," << sign(v) << "\n";
  } else {
    json j = header_json("scan", cfg, spec);
    j["method"] = to_string(method);
    json arr = json::array();
    for (const auto& [e, v] : rows)
      arr.push_back(json{{"energy", number(e)}, {"value", v ? number(*v) : json(nullptr)}, {"sign", sign(v)}});
    j["rows"] = arr;
    j["failures"] = failures;
    out << j.dump(2) << "\n";
  }
  for (const auto& f : failures)
    err << "diagnostic: " << f << "\n";
  return failures.empty() ? kOk : kSolverDiagnostic;
}

inline int compare_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.methods.size() < 2)
    throw config_error("methods", "compare needs at least two methods");
  const auto spec = build_potential(cfg);
  std::vector<MethodLevels> runs;
  std::vector<std::string> failures;
  json notes = json::array();
  for (const auto& name : cfg.methods) {
    auto run = run_method(spec, cfg, parse_method(name, "methods"));
    for (auto& f : run.failures)
      failures.push_back(run.levels.method + ": " + f);
    for (auto& n : run.notes)
      notes.push_back(run.levels.method + ": " + n);
    runs.push_back(std::move(run.levels));
  }
  const auto report = compare(std::move(runs));
  const bool gate_failed = cfg.gate && report.max_deviation > *cfg.gate;

  if (cfg.format == "csv") {
    out << levels_csv_header();
    for (const auto& m : report.methods)
      for (const auto& l : m.levels)
        out << level_csv_row(l);
  } else {
    json j = header_json("compare", cfg, spec);
    json methods = json::array();
    for (const auto& m : report.methods) {
      json levels = json::array();
      for (const auto& l : m.levels)
        levels.push_back(level_json(l));
      json entry{{"method", m.method}, {"levels", levels}};
      if (cfg.timing)
        entry["seconds"] = m.seconds;
      methods.push_back(entry);
    }
    j["methods"] = methods;
    json devs = json::array();
    for (const auto& d : report.deviations) {
      json per = json::array();
      for (double v : d.per_level)
        per.push_back(number(v));
      devs.push_back(json{{"first", d.first}, {"second", d.second}, {"per_level", per}, {"max", number(d.max)}});
    }
    j["deviations"] = devs;
    j["max_deviation"] = number(report.max_deviation);
    if (cfg.gate) {
      j["gate"] = number(*cfg.gate);
      j["gate_passed"] = !gate_failed;
    }
    j["failures"] = failures;
    j["notes"] = notes;
    out << j.dump(2) << "\n";
  }
  err << "max deviation: " << fmt12(report.max_deviation) << "\n";
  for (const auto& f : failures)
    err << "diagnostic: " << f << "\n";
  if (gate_failed)
    return kGateExceeded;
  return failures.empty() ? kOk : kSolverDiagnostic;
}

// ---------------------------------------------------------------------------
// argument parsing

struct Flags {
  std::string config_file;
  std::string out_file;
  std::string potential;
  double l = 0, v0 = 0, lambda = 0;
  std::string coeffs;
  std::string samples_file;
  std::vector<double> domain;
  std::string method, mode, format, methods;
  std::size_t n = 0, mesh_n = 0, quad_nodes = 0, grid_points = 0, count = 0;
  std::vector<double> window;
  double tol_e = 0, gate = 0;
  bool timing = false, closed_form_phase = false;
};

inline void add_flags(CLI::App& sub, Flags& f, bool compare) {
  sub.add_option("--config", f.config_file, "JSON configuration file (flags override it)");
  sub.add_option("--out", f.out_file, "Output file (default stdout)");
  sub.add_option("--potential", f.potential, "square_well | harmonic | morse | polynomial | tabulated");
  sub.add_option("--l", f.l, "Square well half width L");
  sub.add_option("--v0", f.v0, "Morse depth V0");
  sub.add_option("--lambda", f.lambda, "Morse range parameter lambda");
  sub.add_option("--coeffs", f.coeffs, "Polynomial coefficients c0,c1,... (V = sum c_k x^k)");
  sub.add_option("--samples-file", f.samples_file, "Tabulated potential, CSV with header x,v");
  sub.add_option("--domain", f.domain, "Wall positions a b")->expected(2)->allow_extra_args(false);
  sub.add_option("--n", f.n, "Discrete method: interior partition points");
  sub.add_option("--mesh-n", f.mesh_n, "Oracle: finite-difference interior points");
  sub.add_option("--quad-nodes", f.quad_nodes, "Integral method: Gauss-Legendre nodes per region");
  sub.add_option("--window", f.window, "Energy window E_min E_max")->expected(2)->allow_extra_args(false);
  sub.add_option("--grid-points", f.grid_points, "Energy grid size");
  sub.add_option("--tol-e", f.tol_e, "Root tolerance in energy");
  sub.add_option("--format", f.format, "json | csv");
  sub.add_option("--count", f.count, "Number of levels (closed, oracle)");
  sub.add_option("--mode", f.mode, "Discrete coupling: exact | simplified");
  sub.add_flag("--closed-form-phase", f.closed_form_phase, "Integral method: closed-form phase where available");
  sub.add_flag("--timing", f.timing, "Include wall-clock seconds in JSON output");
  if (compare) {
    sub.add_option("--methods", f.methods, "Comma-separated methods to compare")->required();
    sub.add_option("--gate", f.gate, "Exit 3 if the max pairwise deviation exceeds this");
  } else {
    sub.add_option("--method", f.method, "discrete | integral | oracle | closed");
  }
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

inline RunConfig resolve(const CLI::App& sub, const Flags& f) {
  RunConfig cfg;
  auto given = [&](const char* name) {
    const auto* opt = sub.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--config")) {
    std::ifstream in(f.config_file);
    if (!in)
      throw config_error("config", "cannot open '" + f.config_file + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw config_error("config", e.what());
    }
    apply_json(cfg, j);
  }
  if (given("--potential"))
    cfg.kind = f.potential;
  if (given("--l"))
    cfg.half_width = f.l;
  if (given("--v0"))
    cfg.v0 = f.v0;
  if (given("--lambda"))
    cfg.lambda = f.lambda;
  if (given("--coeffs")) {
    cfg.coefficients.clear();
    for (const auto& c : split_list(f.coeffs)) {
      try {
        std::size_t used = 0;
        cfg.coefficients.push_back(std::stod(c, &used));
        if (used != c.size())
          throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw config_error("coeffs", "not a number: '" + c + "'");
      }
    }
  }
  if (given("--samples-file"))
    cfg.samples = read_samples_csv(f.samples_file);
  if (given("--domain"))
    cfg.domain = std::pair{f.domain[0], f.domain[1]};
  if (given("--window"))
    cfg.window = std::pair{f.window[0], f.window[1]};
  if (given("--method"))
    cfg.method = f.method;
  if (given("--mode"))
    cfg.mode = f.mode;
  if (given("--n"))
    cfg.n = f.n;
  if (given("--mesh-n"))
    cfg.mesh_n = f.mesh_n;
  if (given("--quad-nodes"))
    cfg.quad_nodes = f.quad_nodes;
  if (given("--grid-points"))
    cfg.grid_points = f.grid_points;
  if (given("--tol-e"))
    cfg.tol_e = f.tol_e;
  if (given("--format"))
    cfg.format = f.format;
  if (given("--count"))
    cfg.count = f.count;
  if (given("--closed-form-phase"))
    cfg.closed_form_phase = true;
  if (given("--timing"))
    cfg.timing = true;
  if (sub.get_name() == "compare") {
    cfg.methods = split_list(f.methods);
    if (given("--gate"))
      cfg.gate = f.gate;
  }
  validate(cfg);
  return cfg;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound-state energies of the 1-D Schrodinger equation (hbar = 1, 2m = 1)", "boundstate"};
  app.require_subcommand(1);
  Flags flags;
  auto* solve = app.add_subcommand("solve", "Compute eigenvalues with one method");
  auto* scan = app.add_subcommand("scan", "Tabulate the condition function over the window");
  auto* cmp = app.add_subcommand("compare", "Run several methods and report deviations");
  add_flags(*solve, flags, false);
  add_flags(*scan, flags, false);
  add_flags(*cmp, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  CLI::App* sub = solve->parsed() ? solve : (scan->parsed() ? scan : cmp);
  try {
    const RunConfig cfg = resolve(*sub, flags);
    std::ofstream file;
    std::ostream* target = &out;
    if (sub->count("--out") > 0) {
      file.open(flags.out_file);
      if (!file)
        throw config_error("out", "cannot open '" + flags.out_file + "'");
      target = &file;
    }
    if (sub == solve)
      return solve_command(cfg, *target, err);
    if (sub == scan)
      return scan_command(cfg, *target, err);
    return compare_command(cfg, *target, err);
  } catch (const config_error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const solver_error& e) {
    err << "solver diagnostic: " << e.what() << "\n";
    return kSolverDiagnostic;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

} // namespace boundstate::cli
