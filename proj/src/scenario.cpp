#include "optosqueeze/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "optosqueeze/error.hpp"
#include "optosqueeze/floquet.hpp"
#include "optosqueeze/optimize.hpp"
#include "optosqueeze/oracle.hpp"

namespace optosqueeze {
namespace {

using Entries = std::map<std::string, std::string>;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "omega_m", "kappa_out", "kappa_int", "gamma_m",   "g0",        "n_th",   "gamma_l",
      "scheme",  "g_minus",   "g_plus",    "g_zero",    "a_zero",    "cooperativity",
      "omega_min", "omega_max", "points",  "grid",      "solver",    "harmonics",
      "outputs", "sweep",     "sweep2",    "sweep_omega", "metric",  "z",      "unit"};
  return keys;
}

const std::set<std::string>& sweepable() {
  static const std::set<std::string> vars = {
      "omega_m", "kappa_out", "kappa_int", "gamma_m", "g0",     "n_th",
      "gamma_l", "g_minus",   "g_plus",    "g_zero",  "a_zero", "cooperativity"};
  return vars;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ValidationError("key '" + key + "': expected a finite number, got '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v < 2.0 || v != std::floor(v) || v > 1e7)
    throw ValidationError("key '" + key + "': expected an integer >= 2, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

GridScale parse_scale(const std::string& key, const std::string& text) {
  const std::string s = lower(text);
  if (s == "linear") return GridScale::Linear;
  if (s == "log") return GridScale::Log;
  if (s == "symlog") return GridScale::SymmetricLog;
  throw ValidationError("key '" + key + "': expected linear, log or symlog, got '" + text + "'");
}

SweepAxis parse_axis(const std::string& key, const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4 && parts.size() != 5)
    throw ValidationError("key '" + key + "': expected variable:lo:hi:points[:scale], got '" +
                          text + "'");
  SweepAxis axis;
  axis.variable = parts[0];
  if (!sweepable().count(axis.variable))
    throw ValidationError("key '" + key + "': '" + axis.variable + "' is not a sweepable field");
  axis.lo = parse_number(key, parts[1]);
  axis.hi = parse_number(key, parts[2]);
  axis.points = parse_count(key, parts[3]);
  if (parts.size() == 5) axis.scale = parse_scale(key, parts[4]);
  if (axis.scale == GridScale::SymmetricLog)
    throw ValidationError("key '" + key + "': sweeps accept linear or log scales");
  return axis;
}

Entries read_flat(const std::string& text) {
  Entries entries;
  std::istringstream is(text);
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!entries.emplace(key, value).second)
      throw ValidationError("key '" + key + "' given more than once");
  }
  return entries;
}

std::string json_scalar(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) {
    return v.is_number_float() ? format_number(v.get<double>()) : v.dump();
  }
  throw ValidationError("key '" + key + "': expected a number or string");
}

std::string json_axis(const std::string& key, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_object()) throw ValidationError("key '" + key + "': expected an object");
  for (const char* field : {"variable", "lo", "hi", "points"}) {
    if (!v.contains(field))
      throw ValidationError("key '" + key + "': missing field '" + field + "'");
  }
  std::string s = json_scalar(key, v.at("variable")) + ":" + json_scalar(key, v.at("lo")) + ":" +
                  json_scalar(key, v.at("hi")) + ":" + json_scalar(key, v.at("points"));
  if (v.contains("scale")) s += ":" + json_scalar(key, v.at("scale"));
  return s;
}

Entries read_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("JSON config must be an object");
  Entries entries;
  for (const auto& [key, v] : doc.items()) {
    if (key == "outputs" && v.is_array()) {
      std::string joined;
      for (const auto& item : v) joined += (joined.empty() ? "" : ",") + json_scalar(key, item);
      entries[key] = joined;
    } else if (key == "sweep" && v.is_array()) {
      if (v.empty() || v.size() > 2)
        throw ValidationError("key 'sweep': expected one or two axes");
      entries["sweep"] = json_axis(key, v[0]);
      if (v.size() == 2) entries["sweep2"] = json_axis(key, v[1]);
    } else if (key == "sweep" || key == "sweep2") {
      entries[key] = json_axis(key, v);
    } else {
      entries[key] = json_scalar(key, v);
    }
  }
  return entries;
}

Scenario build_scenario(const Entries& entries) {
  for (const auto& [key, value] : entries) {
    if (!known_keys().count(key)) throw ValidationError("unknown key '" + key + "'");
  }
  Scenario s;
  auto number = [&](const char* key, double& target) {
    if (const auto it = entries.find(key); it != entries.end()) target = parse_number(key, it->second);
  };
  auto text = [&](const char* key) -> const std::string* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (const auto* v = text("unit")) {
    const std::string u = lower(*v);
    if (u == "kappa") s.unit = RateUnit::Kappa;
    else if (u == "omega_m") s.unit = RateUnit::OmegaM;
    else throw ValidationError("key 'unit': expected kappa or omega_m, got '" + *v + "'");
  }
  number("omega_m", s.params.omega_m);
  number("kappa_out", s.params.kappa_out);
  number("kappa_int", s.params.kappa_int);
  number("gamma_m", s.params.gamma_m);
  number("g0", s.params.g0);
  number("n_th", s.params.n_th);
  number("gamma_l", s.params.gamma_l);

  if (const auto* v = text("scheme")) {
    try {
      s.drives.scheme = parse_scheme(*v);
    } catch (const ValidationError&) {
      throw ValidationError("key 'scheme': unknown scheme '" + *v + "'");
    }
  }
  number("g_minus", s.drives.g_minus);
  if (const auto* v = text("g_plus")) {
    if (lower(*v) == "match") s.auto_match = true;
    else s.drives.g_plus = parse_number("g_plus", *v);
  }
  number("g_zero", s.drives.g_zero);
  number("a_zero", s.drives.a_zero);
  if (const auto* v = text("cooperativity")) {
    if (text("g_minus"))
      throw ValidationError("key 'cooperativity': conflicts with an explicit g_minus");
    s.cooperativity = parse_number("cooperativity", *v);
  }

  number("omega_min", s.grid.omega_min);
  number("omega_max", s.grid.omega_max);
  if (const auto* v = text("points")) s.grid.points = parse_count("points", *v);
  if (const auto* v = text("grid")) s.grid.scale = parse_scale("grid", *v);

  if (const auto* v = text("solver")) {
    try {
      s.solver.kind = parse_solver(*v);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("key 'solver': ") + e.what());
    }
  }
  if (const auto* v = text("harmonics")) {
    const double h = parse_number("harmonics", *v);
    if (h != std::floor(h) || h < 2 || h > kMaxHarmonics)
      throw ValidationError("key 'harmonics': expected an integer in [2, " +
                            std::to_string(kMaxHarmonics) + "], got '" + *v + "'");
    s.solver.n_harm = static_cast<int>(h);
  }
  if (const auto* v = text("outputs")) {
    for (const auto& col : split(*v, ','))
      if (!col.empty()) s.outputs.push_back(col);
  }
  if (const auto* v = text("sweep")) s.sweep.push_back(parse_axis("sweep", *v));
  if (const auto* v = text("sweep2")) {
    if (s.sweep.empty()) throw ValidationError("key 'sweep2': needs 'sweep' as well");
    s.sweep.push_back(parse_axis("sweep2", *v));
    if (s.sweep[0].variable == s.sweep[1].variable)
      throw ValidationError("key 'sweep2': repeats the variable of 'sweep'");
  }
  number("sweep_omega", s.sweep_omega);
  if (const auto* v = text("metric")) {
    const std::string m = lower(*v);
    if (m == "spectrum") s.metric = SweepMetric::Spectrum;
    else if (m == "band_minimum") s.metric = SweepMetric::BandMinimum;
    else if (m == "enhancement") s.metric = SweepMetric::Enhancement;
    else throw ValidationError("key 'metric': expected spectrum, band_minimum or enhancement");
  }
  number("z", s.z);

  // Consistency of the reference unit.
  for (const auto& axis : s.sweep) {
    if (axis.variable == "g_plus" && s.auto_match)
      throw ValidationError("key 'sweep': g_plus cannot be swept with g_plus = match");
    if (axis.variable == "g_minus" && s.cooperativity)
      throw ValidationError("key 'sweep': g_minus cannot be swept with cooperativity set");
    const bool unit_var = s.unit == RateUnit::Kappa
                              ? (axis.variable == "kappa_out" || axis.variable == "kappa_int")
                              : axis.variable == "omega_m";
    if (unit_var)
      throw ValidationError("key 'sweep': '" + axis.variable + "' is the reference unit");
  }
  if (s.unit == RateUnit::Kappa && std::abs(s.params.kappa_total() - 1.0) > 1e-12)
    throw ValidationError("key 'kappa_out': kappa_out + kappa_int must be 1 when unit = kappa");
  if (s.unit == RateUnit::OmegaM && s.params.omega_m != 1.0)
    throw ValidationError("key 'omega_m': must be 1 when unit = omega_m");
  if (!(s.grid.omega_min < s.grid.omega_max))
    throw ValidationError("key 'omega_max': must exceed omega_min");
  if (s.sweep.empty() && s.metric == SweepMetric::Spectrum) (void)s.grid.values();
  return s;
}

void set_variable(Scenario& s, const std::string& var, double value) {
  if (var == "omega_m") s.params.omega_m = value;
  else if (var == "kappa_out") s.params.kappa_out = value;
  else if (var == "kappa_int") s.params.kappa_int = value;
  else if (var == "gamma_m") s.params.gamma_m = value;
  else if (var == "g0") s.params.g0 = value;
  else if (var == "n_th") s.params.n_th = value;
  else if (var == "gamma_l") s.params.gamma_l = value;
  else if (var == "g_minus") s.drives.g_minus = value;
  else if (var == "g_plus") s.drives.g_plus = value;
  else if (var == "g_zero") s.drives.g_zero = value;
  else if (var == "a_zero") s.drives.a_zero = value;
  else if (var == "cooperativity") s.cooperativity = value;
  else throw ValidationError("'" + var + "' is not a sweepable field");
}

struct Evaluated {
  SweepRow row;
  std::optional<double> enhancement;
};

// Spectrum evaluator that records Floquet non-convergence instead of throwing.
struct TrackedSpectrum {
  SpectrumFn fn;
  std::shared_ptr<bool> converged = std::make_shared<bool>(true);
};

TrackedSpectrum tracked_spectrum(const Scenario& s, const DriveConfig& drives) {
  const LtiModel model = build_model(s.params, drives);
  TrackedSpectrum t;
  if (s.solver.kind == Solver::Rwa) {
    t.fn = [model](double w) { return spectrum_point(model, w); };
    return t;
  }
  LiftOptions options;
  options.n_harm = s.solver.n_harm;
  const FloquetModel fm = lift(model, s.params, drives, options);
  auto flag = t.converged;
  t.fn = [fm, flag](double w) {
    SweepRow r = floquet_row(fm, w);
    if (!r.converged) *flag = false;
    return r.point;
  };
  return t;
}

Evaluated evaluate_point(const Scenario& s) {
  const DriveConfig drives = resolve_drives(s);
  Evaluated out;
  out.row.solver = s.solver.kind;
  switch (s.metric) {
    case SweepMetric::Spectrum: {
      const TrackedSpectrum t = tracked_spectrum(s, drives);
      out.row.point = t.fn(s.sweep_omega);
      out.row.converged = *t.converged;
      break;
    }
    case SweepMetric::BandMinimum: {
      const TrackedSpectrum t = tracked_spectrum(s, drives);
      const auto best = band_minimum(t.fn, squeezing_quadrature(drives.scheme), s.grid.omega_min,
                                     s.grid.omega_max, s.grid.points);
      out.row.point = best.point;
      out.row.converged = *t.converged;
      break;
    }
    case SweepMetric::Enhancement: {
      bool converged = true;
      out.enhancement = measurement_enhancement(s.params, drives, s.solver, &converged);
      const TrackedSpectrum t = tracked_spectrum(s, drives);
      out.row.point = t.fn(0.0);
      out.row.converged = converged && *t.converged;
      break;
    }
  }
  return out;
}

bool is_dissipative_family(Scheme scheme) { return scheme != Scheme::Ponderomotive; }

}  // namespace

std::vector<double> FrequencyGrid::values() const {
  switch (scale) {
    case GridScale::Linear: return linear_grid(omega_min, omega_max, points);
    case GridScale::Log: return log_grid(omega_min, omega_max, points);
    case GridScale::SymmetricLog:
      // omega_min/omega_max are the smallest and largest |omega|; points per side.
      return symmetric_log_grid(omega_min, omega_max, points);
  }
  return {};
}

std::vector<double> SweepAxis::values() const {
  return scale == GridScale::Log ? log_grid(lo, hi, points) : linear_grid(lo, hi, points);
}

Scenario parse_scenario(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string::npos && text[first] == '{';
  return build_scenario(json ? read_json(text) : read_flat(text));
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str());
}

DriveConfig resolve_drives(const Scenario& s) {
  s.params.validate();
  DriveConfig d = s.drives;
  if (s.cooperativity) d.g_minus = coupling_for_cooperativity(s.params, *s.cooperativity);
  if (s.auto_match) {
    if (d.scheme == Scheme::Ponderomotive)
      throw ValidationError("key 'g_plus': match is not defined for the ponderomotive scheme");
    const DriveConfig m = matched_drives(s.params, d.g_minus);
    d.g_minus = m.g_minus;
    d.g_plus = m.g_plus;
    const double ratio =
        oracle::self_energy(0.0, s.params, d).kappa_tilde / s.params.kappa_total();
    if (!(std::abs(ratio - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "impedance matching failed: kappa_tilde[0] / kappa_total = " << ratio;
      throw SolverError(os.str());
    }
  }
  return d;
}

double measurement_enhancement(const PhysParams& params, const DriveConfig& drives,
                               const SolverConfig& solver, bool* converged) {
  if (drives.a_zero == 0.0)
    throw ValidationError("a_zero must be nonzero for the measurement enhancement");
  const MeasurementModel mm = build_measurement(params, drives, {1.0});
  double chi = 0.0;
  double s_u1 = 0.0;
  bool ok = true;
  if (solver.kind == Solver::Rwa) {
    chi = mean_response(mm.model, mm.drive);
    s_u1 = spectrum_point(mm.model, 0.0).s_u1;
  } else {
    LiftOptions options;
    options.n_harm = solver.n_harm;
    const FloquetModel fm = lift(mm.model, params, drives, options);
    try {
      chi = floquet_mean_response(fm);
    } catch (const ConvergenceError&) {
      chi = floquet_mean_response_at(fm, kMaxHarmonics);
      ok = false;
    }
    const SweepRow row = floquet_row(fm, 0.0);
    s_u1 = row.point.s_u1;
    ok = ok && row.converged;
  }
  const double rate = measurement_rate(chi, homodyne_spectrum(mm.model, s_u1));

  DriveConfig bare = drives;
  bare.g_minus = bare.g_plus = bare.g_zero = 0.0;
  const MeasurementModel lc = build_measurement(params, bare, {1.0});
  const double rate_lc = measurement_rate(
      mean_response(lc.model, lc.drive),
      homodyne_spectrum(lc.model, spectrum_point(lc.model, 0.0).s_u1));
  if (converged) *converged = ok;
  return rate / rate_lc;
}

SweepResult spectrum_result(const Scenario& scenario, const std::vector<double>& omegas,
                            Execution execution) {
  SweepResult result;
  const DriveConfig drives = resolve_drives(scenario);
  const LtiModel model = build_model(scenario.params, drives);
  result.rows.resize(omegas.size());
  if (scenario.solver.kind == Solver::Rwa) {
    const auto points = spectrum_sweep(model, omegas, execution);
    for (std::size_t i = 0; i < points.size(); ++i) result.rows[i].row = {points[i], Solver::Rwa, true};
  } else {
    LiftOptions options;
    options.n_harm = scenario.solver.n_harm;
    const FloquetModel fm = lift(model, scenario.params, drives, options);
    const auto rows = floquet_sweep(fm, omegas, execution);
    for (std::size_t i = 0; i < rows.size(); ++i) result.rows[i].row = rows[i];
  }
  return result;
}

SweepResult evaluate_scenario(const Scenario& scenario, Execution execution) {
  SweepResult result;
  result.metric = scenario.metric;
  if (scenario.metric == SweepMetric::Enhancement && scenario.drives.scheme != Scheme::Measurement)
    throw ValidationError("key 'metric': enhancement needs scheme = measurement");

  if (scenario.sweep.empty() && scenario.metric == SweepMetric::Spectrum)
    return spectrum_result(scenario, scenario.grid.values(), execution);

  std::vector<std::vector<double>> axes;
  for (const auto& axis : scenario.sweep) {
    result.axis_names.push_back(axis.variable);
    axes.push_back(axis.values());
  }
  std::size_t total = 1;
  for (const auto& a : axes) total *= a.size();
  result.rows.resize(total);
  for_each_index(total, execution, [&](std::size_t i) {
    Scenario point = scenario;
    std::vector<double> values(axes.size());
    // Row-major: the last axis varies fastest.
    std::size_t rest = i;
    for (std::size_t k = axes.size(); k-- > 0;) {
      values[k] = axes[k][rest % axes[k].size()];
      rest /= axes[k].size();
    }
    for (std::size_t k = 0; k < axes.size(); ++k)
      set_variable(point, scenario.sweep[k].variable, values[k]);
    const Evaluated e = evaluate_point(point);
    result.rows[i] = {values, e.row, e.enhancement};
  });
  return result;
}

void check_row_invariants(const SweepRow& row, Scheme scheme) {
  const SpectrumPoint& p = row.point;
  std::ostringstream os;
  os.precision(17);
  os << "invariant violated at omega = " << p.omega << ": ";
  for (double v : {p.omega, p.s_u1, p.s_u2, p.s_u12, p.s_opt, p.phi_opt}) {
    if (!std::isfinite(v)) throw SolverError(os.str() + "non-finite value");
  }
  if (p.n_eff && !std::isfinite(*p.n_eff)) throw SolverError(os.str() + "non-finite n_eff");
  const double scale = std::max(std::abs(p.s_u1), std::abs(p.s_u2));
  if (p.s_u1 < -1e-12 * scale || p.s_u2 < -1e-12 * scale) {
    os << "negative quadrature spectrum (" << p.s_u1 << ", " << p.s_u2 << ")";
    throw SolverError(os.str());
  }
  if (p.s_opt > std::min(p.s_u1, p.s_u2) + 1e-12 * scale) {
    os << "s_opt = " << p.s_opt << " exceeds min(s_u1, s_u2)";
    throw SolverError(os.str());
  }
  if (!(p.phi_opt > -std::numbers::pi / 2 && p.phi_opt <= std::numbers::pi / 2)) {
    os << "phi_opt = " << p.phi_opt << " outside (-pi/2, pi/2]";
    throw SolverError(os.str());
  }
  if (row.solver == Solver::Rwa && is_dissipative_family(scheme) &&
      4.0 * p.s_u1 * p.s_u2 < 1.0 - 1e-9) {
    os << "4 s_u1 s_u2 = " << 4.0 * p.s_u1 * p.s_u2 << " < 1";
    throw SolverError(os.str());
  }
}

std::vector<std::string> all_columns(const SweepResult& result) {
  std::vector<std::string> cols = result.axis_names;
  for (const char* c : {"omega", "s_u1", "s_u2", "s_u12", "s_opt", "phi_opt", "n_eff"})
    cols.emplace_back(c);
  if (result.metric == SweepMetric::Enhancement) cols.emplace_back("enhancement");
  cols.emplace_back("solver");
  cols.emplace_back("converged");
  return cols;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const SweepResult& result, const std::vector<std::string>& outputs) {
  const auto available = all_columns(result);
  const std::vector<std::string> cols = outputs.empty() ? available : outputs;
  std::vector<int> index;
  for (const auto& c : cols) {
    const auto it = std::find(available.begin(), available.end(), c);
    if (it == available.end()) throw ValidationError("key 'outputs': unknown column '" + c + "'");
    index.push_back(static_cast<int>(it - available.begin()));
  }
  const int n_axes = static_cast<int>(result.axis_names.size());

  std::string out;
  for (std::size_t j = 0; j < cols.size(); ++j) out += (j ? "," : "") + cols[j];
  out += '\n';
  for (const auto& r : result.rows) {
    const SpectrumPoint& p = r.row.point;
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (j) out += ',';
      const int k = index[j];
      if (k < n_axes) {
        out += format_number(r.axis[static_cast<std::size_t>(k)]);
        continue;
      }
      const std::string& name = available[static_cast<std::size_t>(k)];
      if (name == "omega") out += format_number(p.omega);
      else if (name == "s_u1") out += format_number(p.s_u1);
      else if (name == "s_u2") out += format_number(p.s_u2);
      else if (name == "s_u12") out += format_number(p.s_u12);
      else if (name == "s_opt") out += format_number(p.s_opt);
      else if (name == "phi_opt") out += format_number(p.phi_opt);
      else if (name == "n_eff") out += p.n_eff ? format_number(*p.n_eff) : "";
      else if (name == "enhancement") out += r.enhancement ? format_number(*r.enhancement) : "";
      else if (name == "solver") out += to_string(r.row.solver);
      else if (name == "converged") out += r.row.converged ? "true" : "false";
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ValidationError("write to '" + path.string() + "' failed");
}

int run_scenario(const std::filesystem::path& config, const std::filesystem::path& out,
                 const RunOverrides& overrides, std::string& error) {
  try {
    Scenario s = load_scenario(config);
    if (overrides.solver) s.solver.kind = *overrides.solver;
    if (overrides.n_harm) {
      if (*overrides.n_harm < 2 || *overrides.n_harm > kMaxHarmonics)
        throw ValidationError("--harmonics must lie in [2, " + std::to_string(kMaxHarmonics) + "]");
      s.solver.n_harm = *overrides.n_harm;
    }
    const SweepResult result = evaluate_scenario(s, Execution::Parallel);
    for (const auto& r : result.rows) check_row_invariants(r.row, s.drives.scheme);
    write_text_file(out, to_csv(result, s.outputs));
    return 0;
  } catch (const ValidationError& e) {
    error = e.what();
    return 2;
  } catch (const SolverError& e) {
    error = e.what();
    return 3;
  }
}

}  // namespace optosqueeze
