#include "sdci/io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "sdci/errors.hpp"

namespace sdci {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s, const std::string& field, std::size_t line) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::nan("");
  if (s.empty()) throw ParseError("empty value for '" + field + "'", line);
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError("'" + field + "' is not a number: '" + s + "'", line);
  return v;
}

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto a = s.find_first_not_of(ws);
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(ws);
  return s.substr(a, b - a + 1);
}

bool skippable(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

// Reads the header row and returns the data rows with their line numbers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_table(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      t.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       lineno);
    t.rows.emplace_back(lineno, std::move(fields));
  }
  if (!have_header) throw ParseError("missing header row", lineno);
  return t;
}

bool parse_bool(const std::string& s, const std::string& field, std::size_t line) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ParseError("'" + field + "' must be true or false, got '" + s + "'", line);
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<Unit> read_units_csv(std::istream& in) {
  auto t = read_table(in);
  const auto& h = t.header;
  const bool with_sd = h.size() == 3 && h[2] == "sd";
  if (h.size() < 2 || h[0] != "id" || h[1] != "estimate" || (h.size() == 3 && !with_sd) || h.size() > 3)
    throw ParseError("header must be 'id,estimate' or 'id,estimate,sd'", 0);
  std::vector<Unit> units;
  for (auto& [line, f] : t.rows) {
    Unit u;
    u.id = f[0];
    u.estimate = parse_double(f[1], "estimate", line);
    if (!std::isfinite(u.estimate)) throw ParseError("estimate must be finite", line);
    if (with_sd) {
      u.sd = parse_double(f[2], "sd", line);
      if (!(u.sd > 0 && std::isfinite(u.sd))) throw ParseError("sd must be positive", line);
    }
    units.push_back(std::move(u));
  }
  return units;
}

std::vector<Table2x3> read_gwas_csv(std::istream& in) {
  auto t = read_table(in);
  const std::vector<std::string> want = {"id", "n10", "n11", "n12", "n20", "n21", "n22"};
  if (t.header != want) throw ParseError("header must be 'id,n10,n11,n12,n20,n21,n22'", 0);
  std::vector<Table2x3> out;
  for (auto& [line, f] : t.rows) {
    Table2x3 tab;
    tab.id = f[0];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        const std::string& name = want[1 + 3 * i + j];
        double v = parse_double(f[1 + 3 * i + j], name, line);
        if (!(v >= 0) || std::floor(v) != v) throw ParseError("'" + name + "' must be a non-negative count", line);
        tab.n[i][j] = v;
      }
    out.push_back(std::move(tab));
  }
  return out;
}

void write_selection_csv(std::ostream& out, const SelectionResult& res, const std::string& manifest) {
  if (!manifest.empty()) out << "# " << manifest << "\n";
  out << "id,selected,decision,lower,upper,lower_closed,upper_closed,adjusted_alpha\n";
  for (const auto& u : res.units) {
    out << u.id << ',' << (u.selected ? "true" : "false") << ',' << to_string(u.decision) << ',';
    if (u.interval)
      out << format_double(u.interval->lower) << ',' << format_double(u.interval->upper) << ','
          << (u.interval->lower_closed ? "true" : "false") << ',' << (u.interval->upper_closed ? "true" : "false");
    else
      out << ",,,";
    out << ',' << format_double(u.adjusted_alpha) << '\n';
  }
}

std::vector<UnitResult> read_selection_csv(std::istream& in) {
  auto t = read_table(in);
  if (t.header.size() != 8 || t.header[0] != "id") throw ParseError("not a selection output file", 0);
  std::vector<UnitResult> out;
  for (auto& [line, f] : t.rows) {
    UnitResult u;
    u.id = f[0];
    u.selected = parse_bool(f[1], "selected", line);
    try {
      u.decision = sign_decision_from_string(f[2]);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line);
    }
    if (!f[3].empty()) {
      Interval i{parse_double(f[3], "lower", line), parse_double(f[4], "upper", line),
                 parse_bool(f[5], "lower_closed", line), parse_bool(f[6], "upper_closed", line)};
      u.interval = i;
    }
    u.adjusted_alpha = parse_double(f[7], "adjusted_alpha", line);
    out.push_back(std::move(u));
  }
  return out;
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (!kv.emplace(key, value).second) throw ParseError("duplicate key '" + key + "'", lineno);
  }
  return kv;
}

namespace {

double num(const std::string& key, const std::string& v) {
  try {
    return parse_double(v, key, 0);
  } catch (const ParseError&) {
    throw ConfigError(key + ": not a number: '" + v + "'");
  }
}

std::size_t count(const std::string& key, const std::string& v) {
  double d = num(key, v);
  if (d < 0 || std::floor(d) != d) throw ConfigError(key + ": must be a non-negative integer");
  return static_cast<std::size_t>(d);
}

bool flag(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": must be true or false");
}

std::vector<double> number_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (auto& s : split_csv_line(v)) out.push_back(num(key, s));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

}  // namespace

SimConfig sim_config_from_key_values(const std::map<std::string, std::string>& kv) {
  static const std::set<std::string> known = {
      "m",     "theta_model", "theta_values", "theta_sd", "n_exp", "exp_mean", "n_norm", "norm_mean",
      "norm_sd", "random_signs", "pi1",      "rho1",     "fisher_n", "noise",  "dims",   "fwhm",
      "q",     "family",      "psi",         "delta",    "dependency", "reps", "seed",   "theta_fixed"};
  for (auto& [k, v] : kv)
    if (!known.count(k)) throw ConfigError(k + ": unknown setting");

  SimConfig c;
  auto get = [&](const std::string& k) -> const std::string* {
    auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("m")) c.m = count("m", *v);
  if (auto v = get("theta_model")) c.theta.kind = theta_model_from_string(*v);
  if (auto v = get("theta_values")) c.theta.values = number_list("theta_values", *v);
  if (auto v = get("theta_sd")) c.theta.sd = num("theta_sd", *v);
  if (auto v = get("n_exp")) c.theta.n_exp = count("n_exp", *v);
  if (auto v = get("exp_mean")) c.theta.exp_mean = num("exp_mean", *v);
  if (auto v = get("n_norm")) c.theta.n_norm = count("n_norm", *v);
  if (auto v = get("norm_mean")) c.theta.norm_mean = num("norm_mean", *v);
  if (auto v = get("norm_sd")) c.theta.norm_sd = num("norm_sd", *v);
  if (auto v = get("random_signs")) c.theta.random_signs = flag("random_signs", *v);
  if (auto v = get("pi1")) c.theta.pi1 = num("pi1", *v);
  if (auto v = get("rho1")) c.theta.rho1 = num("rho1", *v);
  if (auto v = get("fisher_n")) c.theta.fisher_n = static_cast<int>(count("fisher_n", *v));
  if (auto v = get("noise")) c.noise = noise_kind_from_string(*v);
  if (auto v = get("dims")) {
    std::string s = *v;
    for (char& ch : s)
      if (ch == 'x') ch = ',';
    auto d = number_list("dims", s);
    if (d.size() != 3) throw ConfigError("dims: need three extents, e.g. 10x10x10");
    for (int i = 0; i < 3; ++i) c.dims[i] = count("dims", format_double(d[i]));
  }
  if (auto v = get("fwhm")) c.fwhm = num("fwhm", *v);
  if (auto v = get("q")) c.procedure.q = num("q", *v);
  if (auto v = get("family")) {
    try {
      c.procedure.family.kind = family_kind_from_string(*v);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("family: ") + e.what());
    }
  }
  if (auto v = get("psi")) {
    if (!c.procedure.family.uses_psi()) throw ConfigError("psi: only valid with family qc or mqc");
    c.procedure.family.psi = num("psi", *v);
  } else if (c.procedure.family.uses_psi()) {
    c.procedure.family.psi = 0.85;
  }
  if (auto v = get("delta")) {
    if (c.procedure.family.kind != FamilyKind::MQCDelta) throw ConfigError("delta: only valid with family mqc-delta");
    c.procedure.family.delta = num("delta", *v);
  }
  if (auto v = get("dependency")) c.procedure.dependency = dependency_mode_from_string(*v);
  if (auto v = get("reps")) c.n_reps = count("reps", *v);
  if (auto v = get("seed")) {
    std::size_t used = 0;
    try {
      c.seed = std::stoull(*v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != v->size() || (*v)[0] == '-') throw ConfigError("seed: must be a non-negative integer");
  }
  if (auto v = get("theta_fixed")) c.theta_fixed_across_reps = flag("theta_fixed", *v);
  c.validate();
  return c;
}

SimConfig parse_sim_config(std::istream& in) { return sim_config_from_key_values(read_key_values(in)); }

std::map<std::string, std::string> sim_config_echo(const SimConfig& c) {
  std::map<std::string, std::string> e;
  e["m"] = std::to_string(c.m);
  e["theta_model"] = to_string(c.theta.kind);
  switch (c.theta.kind) {
    case ThetaModelKind::Fixed: e["theta_values"] = join(c.theta.values); break;
    case ThetaModelKind::ExpNormalMix:
      e["n_exp"] = std::to_string(c.theta.n_exp);
      e["exp_mean"] = format_double(c.theta.exp_mean);
      e["n_norm"] = std::to_string(c.theta.n_norm);
      e["norm_mean"] = format_double(c.theta.norm_mean);
      e["norm_sd"] = format_double(c.theta.norm_sd);
      e["random_signs"] = c.theta.random_signs ? "true" : "false";
      break;
    case ThetaModelKind::NormalPrior: e["theta_sd"] = format_double(c.theta.sd); break;
    case ThetaModelKind::SparseField:
      e["pi1"] = format_double(c.theta.pi1);
      e["rho1"] = format_double(c.theta.rho1);
      e["fisher_n"] = std::to_string(c.theta.fisher_n);
      break;
  }
  e["noise"] = to_string(c.noise);
  if (c.noise == NoiseKind::SmoothedField || c.theta.kind == ThetaModelKind::SparseField)
    e["dims"] = std::to_string(c.dims[0]) + "x" + std::to_string(c.dims[1]) + "x" + std::to_string(c.dims[2]);
  if (c.noise == NoiseKind::SmoothedField) e["fwhm"] = format_double(c.fwhm);
  e["q"] = format_double(c.procedure.q);
  e["family"] = to_string(c.procedure.family.kind);
  if (c.procedure.family.uses_psi()) e["psi"] = format_double(c.procedure.family.psi);
  if (c.procedure.family.kind == FamilyKind::MQCDelta) e["delta"] = format_double(c.procedure.family.delta);
  e["dependency"] = to_string(c.procedure.dependency);
  e["reps"] = std::to_string(c.n_reps);
  e["seed"] = std::to_string(c.seed);
  e["theta_fixed"] = c.theta_fixed_across_reps ? "true" : "false";
  return e;
}

}  // namespace sdci
