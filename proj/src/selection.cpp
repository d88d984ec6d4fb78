#include "sdci/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdci/errors.hpp"

namespace sdci {

std::string to_string(DependencyMode d) {
  return d == DependencyMode::Independent ? "independent" : "general";
}

DependencyMode dependency_mode_from_string(const std::string& s) {
  if (s == "independent") return DependencyMode::Independent;
  if (s == "general") return DependencyMode::GeneralDependency;
  throw ConfigError("unknown dependency mode '" + s + "'");
}

double harmonic_number(std::size_t m) {
  double h = 0.0;
  for (std::size_t j = m; j >= 1; --j) h += 1.0 / static_cast<double>(j);
  return h;
}

void ProcedureConfig::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must lie in (0,1), got " + std::to_string(q));
  family.validate();
}

double ProcedureConfig::effective_q(std::size_t m) const {
  return dependency == DependencyMode::GeneralDependency ? q / harmonic_number(m) : q;
}

namespace {

std::vector<double> standardized(const std::vector<Unit>& units) {
  if (units.empty()) throw DomainError("no units supplied");
  std::vector<double> z(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    const Unit& u = units[i];
    if (!std::isfinite(u.estimate)) throw InputError("unit '" + u.id + "': estimate is not finite");
    if (!(u.sd > 0.0 && std::isfinite(u.sd))) throw InputError("unit '" + u.id + "': sd must be positive");
    z[i] = u.estimate / u.sd;
  }
  return z;
}

// Indices sorted by decreasing |z|.
std::vector<std::size_t> order_by_magnitude(const std::vector<double>& z) {
  std::vector<std::size_t> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(z[a]) > std::fabs(z[b]); });
  return idx;
}

SelectionResult empty_result(const std::vector<Unit>& units) {
  SelectionResult res;
  res.units.resize(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) res.units[i].id = units[i].id;
  return res;
}

}  // namespace

SelectionResult sdci(const std::vector<Unit>& units, const ProcedureConfig& cfg) {
  cfg.validate();
  const auto z = standardized(units);
  const std::size_t m = z.size();
  const double q_eff = cfg.effective_q(m);
  const auto idx = order_by_magnitude(z);

  // tau(r) decreases in r, so the first r (from the top) with tau(r) <= |z|_(r) is R.
  std::size_t R = 0;
  for (std::size_t r = m; r >= 1; --r) {
    double tau = sign_threshold(cfg.family, adjusted_level(q_eff, r, m));
    if (tau <= std::fabs(z[idx[r - 1]])) {
      R = r;
      break;
    }
  }

  SelectionResult res = empty_result(units);
  res.R = R;
  if (R == 0) return res;
  const double level = adjusted_level(q_eff, R, m);
  res.adjusted_alpha = level;
  const double cutoff = std::fabs(z[idx[R - 1]]);
  for (std::size_t i = 0; i < m; ++i) {
    UnitResult& u = res.units[i];
    u.adjusted_alpha = level;
    if (std::fabs(z[i]) < cutoff) continue;
    Interval ci = marginal_interval(cfg.family, z[i], level);
    u.selected = true;
    u.decision = family_decision(cfg.family, ci);
    if (!determines_sign(u.decision))
      throw NumericError("unit '" + u.id + "' passed the sign threshold but its interval " + to_string(ci) +
                         " does not determine the sign");
    u.interval = ci.scaled(units[i].sd);
  }
  return res;
}

SelectionResult bh_directional(const std::vector<Unit>& units, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must lie in (0,1)");
  const auto z = standardized(units);
  const std::size_t m = z.size();
  std::vector<double> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = 2.0 * cdf(-std::fabs(z[i]));
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

  std::size_t R = 0;
  for (std::size_t r = m; r >= 1; --r) {
    if (p[idx[r - 1]] <= adjusted_level(q, r, m)) {
      R = r;
      break;
    }
  }
  SelectionResult res = empty_result(units);
  res.R = R;
  if (R == 0) return res;
  res.adjusted_alpha = adjusted_level(q, R, m);
  const double cutoff = p[idx[R - 1]];
  for (std::size_t i = 0; i < m; ++i) {
    UnitResult& u = res.units[i];
    u.adjusted_alpha = res.adjusted_alpha;
    if (p[i] > cutoff) continue;
    u.selected = true;
    u.decision = z[i] > 0 ? SignDecision::Positive : SignDecision::Negative;
  }
  return res;
}

std::vector<Interval> by_adjust(const std::vector<std::size_t>& selected, std::size_t R_min,
                                const std::vector<Unit>& units, const MarginalFamily& family, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must lie in (0,1)");
  const std::size_t m = units.size();
  std::vector<Interval> out;
  if (selected.empty()) return out;
  if (R_min < 1 || R_min > m) throw DomainError("R_min must lie in [1, m]");
  const double level = adjusted_level(q, R_min, m);
  out.reserve(selected.size());
  for (std::size_t i : selected) {
    if (i >= m) throw DomainError("selected index out of range");
    const Unit& u = units[i];
    if (!(u.sd > 0.0)) throw InputError("unit '" + u.id + "': sd must be positive");
    out.push_back(marginal_interval(family, u.estimate / u.sd, level).scaled(u.sd));
  }
  return out;
}

bool is_direction_error(SignDecision d, double theta) {
  switch (d) {
    case SignDecision::Positive: return theta <= 0.0;
    case SignDecision::Negative: return theta >= 0.0;
    case SignDecision::NonNegative: return theta < 0.0;
    case SignDecision::NonPositive: return theta > 0.0;
    case SignDecision::NotDetermining: return false;
  }
  return false;
}

ErrorMetrics evaluate(const SelectionResult& result, const std::vector<double>& truth) {
  if (truth.size() != result.units.size())
    throw InputError("evaluate: " + std::to_string(truth.size()) + " true values for " +
                     std::to_string(result.units.size()) + " units");
  ErrorMetrics e;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const UnitResult& u = result.units[i];
    if (!u.selected) continue;
    if (u.interval) {
      ++e.R_ci;
      if (!u.interval->contains(truth[i])) ++e.V_ci;
    }
    if (determines_sign(u.decision)) {
      ++e.R_d;
      if (is_direction_error(u.decision, truth[i])) ++e.V_d;
    }
  }
  e.fcp = static_cast<double>(e.V_ci) / static_cast<double>(std::max<std::size_t>(e.R_ci, 1));
  e.wdfdp = static_cast<double>(e.V_d) / static_cast<double>(std::max<std::size_t>(e.R_d, 1));
  return e;
}

}  // namespace sdci
