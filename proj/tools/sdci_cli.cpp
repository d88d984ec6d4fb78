// Command-line front end: sdci | bh-dir | gwas | simulate | constants.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "sdci/bivariate.hpp"
#include "sdci/errors.hpp"
#include "sdci/io.hpp"
#include "sdci/marginal.hpp"
#include "sdci/selection.hpp"
#include "sdci/simulation.hpp"
#include "sdci/version.hpp"

using json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kParse = 3, kNumeric = 4, kConfig = 5, kInput = 6, kIo = 7 };

struct UsageError : sdci::Error {
  using sdci::Error::Error;
};
struct IoError : sdci::Error {
  using sdci::Error::Error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

// Writes to `path`, or to the fallback stream when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::string manifest_line(const std::string& sub, const std::map<std::string, std::string>& cfg) {
  std::string s = "manifest sdci " + std::string(sdci::kVersion) + " " + sub;
  for (auto& [k, v] : cfg) s += " " + k + "=" + v;
  return s;
}

json manifest_json(const std::string& sub, const std::map<std::string, std::string>& cfg) {
  json m;
  m["subcommand"] = sub;
  m["version"] = sdci::kVersion;
  m["config"] = json(cfg);
  return m;
}

// --family / --psi / --delta as given on the command line.
struct FamilyArgs {
  std::string family = "mqc";
  double psi = 0.85;
  double delta = 0.0;
  CLI::Option* psi_opt = nullptr;
  CLI::Option* delta_opt = nullptr;

  void add(CLI::App* app, const std::string& name, const std::string& dflt) {
    family = dflt;
    app->add_option(name, family, "marginal family: symmetric, one-sided, pratt, qc, mqc, mqc-delta")
        ->capture_default_str();
    psi_opt = app->add_option("--psi", psi, "psi in [0.5, 1) for qc/mqc (default 0.85)");
    delta_opt = app->add_option("--delta", delta, "effect-size margin for mqc-delta");
  }

  sdci::MarginalFamily build() const {
    sdci::MarginalFamily f;
    try {
      f.kind = sdci::family_kind_from_string(family);
    } catch (const sdci::ConfigError& e) {
      throw UsageError(e.what());
    }
    if (psi_opt->count() && !f.uses_psi()) throw UsageError("--psi requires --family qc or mqc");
    if (delta_opt->count() && f.kind != sdci::FamilyKind::MQCDelta)
      throw UsageError("--delta requires --family mqc-delta");
    if (f.kind == sdci::FamilyKind::MQCDelta && !delta_opt->count())
      throw UsageError("--family mqc-delta requires --delta");
    f.psi = f.uses_psi() ? psi : 0.5;
    f.delta = delta;
    return f;
  }

  void echo(std::map<std::string, std::string>& cfg, const sdci::MarginalFamily& f, const std::string& key) const {
    cfg[key] = sdci::to_string(f.kind);
    if (f.uses_psi()) cfg["psi"] = sdci::format_double(f.psi);
    if (f.kind == sdci::FamilyKind::MQCDelta) cfg["delta"] = sdci::format_double(delta);
  }
};

struct SdciArgs {
  std::string input, output, summary;
  double q = 0.05;
  FamilyArgs fam;
  std::string dependency = "independent";
  int fisher_n = 0;
  CLI::Option* fisher_opt = nullptr;
};

int run_sdci(const SdciArgs& a) {
  sdci::ProcedureConfig cfg;
  cfg.q = a.q;
  cfg.family = a.fam.build();
  try {
    cfg.dependency = sdci::dependency_mode_from_string(a.dependency);
  } catch (const sdci::ConfigError& e) {
    throw UsageError(e.what());
  }
  auto in = open_input(a.input);
  auto units = sdci::read_units_csv(in);

  const bool fisher = a.fisher_opt->count() > 0;
  if (fisher) {
    for (auto& u : units) {
      if (u.sd != 1.0) throw UsageError("--fisher-n expects correlations without an sd column");
      u.estimate = sdci::fisher_z(u.estimate, a.fisher_n);
    }
    if (cfg.family.kind == sdci::FamilyKind::MQCDelta) cfg.family.delta = sdci::fisher_z(cfg.family.delta, a.fisher_n);
  }

  auto res = sdci::sdci(units, cfg);
  if (fisher)
    for (auto& u : res.units)
      if (u.interval) u.interval = u.interval->mapped([&](double z) { return sdci::fisher_z_inv(z, a.fisher_n); });

  std::map<std::string, std::string> echo{{"q", sdci::format_double(a.q)}, {"dependency", a.dependency}};
  a.fam.echo(echo, cfg.family, "family");
  if (fisher) echo["fisher_n"] = std::to_string(a.fisher_n);

  std::ostringstream csv;
  sdci::write_selection_csv(csv, res, manifest_line("sdci", echo));
  emit(a.output, csv.str(), std::cout);

  json s;
  s["manifest"] = manifest_json("sdci", echo);
  s["m"] = units.size();
  s["R"] = res.R;
  s["adjusted_alpha"] = res.adjusted_alpha;
  s["q"] = a.q;
  s["q_effective"] = cfg.effective_q(units.size());
  s["family"] = sdci::to_string(cfg.family.kind);
  if (cfg.family.uses_psi()) s["psi"] = cfg.family.psi;
  if (cfg.family.kind == sdci::FamilyKind::MQCDelta) s["delta"] = a.fam.delta;
  emit(a.summary, s.dump(2) + "\n", std::cerr);
  return kOk;
}

struct BhArgs {
  std::string input, output, summary;
  double q = 0.05;
};

int run_bh(const BhArgs& a) {
  auto in = open_input(a.input);
  auto units = sdci::read_units_csv(in);
  auto res = sdci::bh_directional(units, a.q);
  std::map<std::string, std::string> echo{{"q", sdci::format_double(a.q)}};
  std::ostringstream csv;
  sdci::write_selection_csv(csv, res, manifest_line("bh-dir", echo));
  emit(a.output, csv.str(), std::cout);
  json s;
  s["manifest"] = manifest_json("bh-dir", echo);
  s["m"] = units.size();
  s["R"] = res.R;
  s["adjusted_alpha"] = res.adjusted_alpha;
  s["q"] = a.q;
  emit(a.summary, s.dump(2) + "\n", std::cerr);
  return kOk;
}

struct GwasArgs {
  std::string input, output, summary;
  double q1 = 0.0104, q2 = 0.04;
  FamilyArgs fam;
  std::vector<double> weights{0.0, 1.0, 2.0};
  bool continuity = false;
};

int run_gwas(const GwasArgs& a) {
  if (!(a.q1 > 0 && a.q1 <= 1)) throw UsageError("--q1 must lie in (0, 1]");
  if (!(a.q2 > 0 && a.q2 < 1)) throw UsageError("--q2 must lie in (0, 1)");
  if (a.weights.size() != 3) throw UsageError("--ca-weights needs three values");
  auto family2 = a.fam.build();
  auto in = open_input(a.input);
  auto tables = sdci::read_gwas_csv(in);

  std::vector<sdci::Table2x3> kept;
  std::vector<sdci::BivariateEffect> effects;
  std::size_t skipped = 0;
  for (const auto& t : tables) {
    try {
      effects.push_back(sdci::effects_from_table(t, a.continuity));
      sdci::principal_components(effects.back());
      kept.push_back(t);
    } catch (const sdci::Error& e) {
      if (effects.size() > kept.size()) effects.pop_back();
      std::cerr << "skipping row '" << t.id << "': " << e.what() << "\n";
      ++skipped;
    }
  }
  if (kept.empty()) throw sdci::InputError("no usable rows in '" + a.input + "'");
  auto sel = sdci::rect_sdci(effects, a.q1, a.q2, family2);
  const std::array<double, 3> w{a.weights[0], a.weights[1], a.weights[2]};

  std::map<std::string, std::string> echo{{"q1", sdci::format_double(a.q1)},
                                          {"q2", sdci::format_double(a.q2)},
                                          {"continuity_correction", a.continuity ? "true" : "false"},
                                          {"ca_weights", sdci::format_double(w[0]) + ";" + sdci::format_double(w[1]) +
                                                             ";" + sdci::format_double(w[2])}};
  a.fam.echo(echo, family2, "family2");

  std::ostringstream csv;
  csv << "# " << manifest_line("gwas", echo) << "\n";
  csv << "id,beta_dom,beta_rec,var_dom,var_rec,cov,pc2_dom,pc2_rec,z_pc2,ca_z,selected,decision,"
         "corner1_dom,corner1_rec,corner2_dom,corner2_rec,corner3_dom,corner3_rec,corner4_dom,corner4_rec\n";
  std::size_t R = 0;
  double adjusted = 0.0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& e = effects[i];
    const auto& s = sel[i];
    double ca = std::nan("");
    try {
      ca = sdci::cochran_armitage(kept[i], w);
    } catch (const sdci::InputError& err) {
      std::cerr << "row '" << kept[i].id << "': " << err.what() << "\n";
    }
    if (s.selected) {
      ++R;
      adjusted = s.region.adjusted_alpha2;
    }
    using sdci::format_double;
    csv << kept[i].id << ',' << format_double(e.beta_dom) << ',' << format_double(e.beta_rec) << ','
        << format_double(e.var_dom) << ',' << format_double(e.var_rec) << ',' << format_double(e.cov) << ','
        << format_double(s.region.pc2[0]) << ',' << format_double(s.region.pc2[1]) << ',' << format_double(s.z)
        << ',' << format_double(ca) << ',' << (s.selected ? "true" : "false") << ',' << sdci::to_string(s.decision);
    for (const auto& c : s.region.corners()) csv << ',' << format_double(c[0]) << ',' << format_double(c[1]);
    csv << '\n';
  }
  emit(a.output, csv.str(), std::cout);

  json s;
  s["manifest"] = manifest_json("gwas", echo);
  s["m"] = kept.size();
  s["skipped"] = skipped;
  s["R"] = R;
  s["adjusted_alpha2"] = adjusted;
  s["q1"] = a.q1;
  s["q2"] = a.q2;
  s["joint_level"] = a.q1 >= 1 ? 1 - a.q2 : (1 - a.q1) * (1 - a.q2);
  emit(a.summary, s.dump(2) + "\n", std::cerr);
  return kOk;
}

struct SimArgs {
  std::string config, output;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  CLI::Option* reps_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int run_simulate(const SimArgs& a) {
  auto in = open_input(a.config);
  auto kv = sdci::read_key_values(in);
  if (a.reps_opt->count()) kv["reps"] = std::to_string(a.reps);
  if (a.seed_opt->count()) kv["seed"] = std::to_string(a.seed);
  auto cfg = sdci::sim_config_from_key_values(kv);
  auto sum = sdci::run(cfg);
  json out;
  auto man = manifest_json("simulate", sdci::sim_config_echo(cfg));
  man["seed"] = cfg.seed;
  out["manifest"] = man;
  json s;
  s["mean_fcp"] = sum.mean_fcp;
  s["se_fcp"] = sum.se_fcp;
  s["mean_wdfdp"] = sum.mean_wdfdp;
  s["se_wdfdp"] = sum.se_wdfdp;
  s["mean_R"] = sum.mean_R;
  s["reps"] = sum.reps;
  s["wd_violations"] = sum.wd_violations;
  out["summary"] = s;
  emit(a.output, out.dump(2) + "\n", std::cout);
  return kOk;
}

struct ConstArgs {
  double alpha = 0.05;
  FamilyArgs fam;
};

int run_constants(const ConstArgs& a) {
  if (!(a.alpha > 0 && a.alpha < 1)) throw UsageError("--alpha must lie in (0,1)");
  auto f = a.fam.build();
  json out;
  std::map<std::string, std::string> echo{{"alpha", sdci::format_double(a.alpha)}};
  a.fam.echo(echo, f, "family");
  out["manifest"] = manifest_json("constants", echo);
  out["alpha"] = a.alpha;
  out["family"] = sdci::to_string(f.kind);
  out["z_alpha"] = sdci::quantile(a.alpha);
  out["z_alpha_half"] = sdci::quantile(0.5 * a.alpha);
  try {
    auto bp = sdci::mqc_psi_breakpoints(a.alpha);
    out["psi1"] = bp.psi1;
    out["psi2"] = bp.psi2;
  } catch (const sdci::NumericError&) {
    out["psi1"] = nullptr;
    out["psi2"] = nullptr;
  }
  if (f.uses_psi()) {
    auto k = sdci::qc_constants(a.alpha, f.psi);
    out["psi"] = f.psi;
    out["cbar"] = k.cbar;
    out["ctilde"] = k.ctilde;
    static const char* names[] = {"low", "middle", "high"};
    out["mqc_case"] = names[static_cast<int>(sdci::mqc_case(k))];
  }
  if (f.kind == sdci::FamilyKind::MQCDelta) {
    out["delta"] = f.delta;
    out["cbar_delta"] = sdci::mqc_delta_cbar(a.alpha, f.delta);
  }
  out["sign_threshold"] = sdci::sign_threshold(f, a.alpha);
  std::cout << out.dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective sign-determining confidence intervals with false coverage-rate control"};
  app.set_version_flag("--version", std::string("sdci ") + sdci::kVersion);
  app.require_subcommand(1);

  SdciArgs sa;
  auto* sub_sdci = app.add_subcommand("sdci", "select units and build sign-determining intervals");
  sub_sdci->add_option("input", sa.input, "CSV with header id,estimate[,sd]")->required();
  sub_sdci->add_option("-o,--output", sa.output, "output CSV (default stdout)");
  sub_sdci->add_option("--summary", sa.summary, "JSON summary path (default stderr)");
  sub_sdci->add_option("--q", sa.q, "FCR level")->capture_default_str();
  sa.fam.add(sub_sdci, "--family", "mqc");
  sub_sdci->add_option("--dependency", sa.dependency, "independent or general")->capture_default_str();
  sa.fisher_opt = sub_sdci->add_option("--fisher-n", sa.fisher_n, "estimates are correlations from n pairs")
                      ->check(CLI::Range(4, 1 << 30));

  BhArgs ba;
  auto* sub_bh = app.add_subcommand("bh-dir", "directional Benjamini-Hochberg");
  sub_bh->add_option("input", ba.input, "CSV with header id,estimate[,sd]")->required();
  sub_bh->add_option("-o,--output", ba.output, "output CSV (default stdout)");
  sub_bh->add_option("--summary", ba.summary, "JSON summary path (default stderr)");
  sub_bh->add_option("--q", ba.q, "FDR level")->capture_default_str();

  GwasArgs ga;
  auto* sub_gwas = app.add_subcommand("gwas", "dominance/recessive effects with rectangular regions");
  sub_gwas->add_option("input", ga.input, "CSV with header id,n10,n11,n12,n20,n21,n22")->required();
  sub_gwas->add_option("-o,--output", ga.output, "output CSV (default stdout)");
  sub_gwas->add_option("--summary", ga.summary, "JSON summary path (default stderr)");
  sub_gwas->add_option("--q1", ga.q1, "level along pc1 (1 = unconstrained)")->capture_default_str();
  sub_gwas->add_option("--q2", ga.q2, "FCR level along pc2")->capture_default_str();
  ga.fam.add(sub_gwas, "--family2", "symmetric");
  sub_gwas->add_option("--ca-weights", ga.weights, "Cochran-Armitage weights")->delimiter(',')->expected(3);
  sub_gwas->add_flag("--continuity-correction", ga.continuity, "add 0.5 to every cell");

  SimArgs sm;
  auto* sub_sim = app.add_subcommand("simulate", "run a Monte Carlo experiment from a config file");
  sub_sim->add_option("config", sm.config, "key = value config file")->required();
  sub_sim->add_option("-o,--output", sm.output, "JSON output (default stdout)");
  sm.reps_opt = sub_sim->add_option("--reps", sm.reps, "override the replicate count");
  sm.seed_opt = sub_sim->add_option("--seed", sm.seed, "override the seed");

  ConstArgs ca;
  auto* sub_const = app.add_subcommand("constants", "print the interval constants");
  sub_const->add_option("--alpha", ca.alpha, "level")->capture_default_str();
  ca.fam.add(sub_const, "--family", "mqc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (sub_sdci->parsed()) return run_sdci(sa);
    if (sub_bh->parsed()) return run_bh(ba);
    if (sub_gwas->parsed()) return run_gwas(ga);
    if (sub_sim->parsed()) return run_simulate(sm);
    if (sub_const->parsed()) return run_constants(ca);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const sdci::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const sdci::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const sdci::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const sdci::Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  }
  return kFailure;
}
