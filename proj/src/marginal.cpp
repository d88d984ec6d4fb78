#include "sdci/marginal.hpp"

#include <algorithm>
#include <cmath>

#include "sdci/errors.hpp"

namespace sdci {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Symmetric: return "symmetric";
    case FamilyKind::OneSided: return "one-sided";
    case FamilyKind::Pratt: return "pratt";
    case FamilyKind::QC: return "qc";
    case FamilyKind::MQC: return "mqc";
    case FamilyKind::MQCDelta: return "mqc-delta";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "symmetric") return FamilyKind::Symmetric;
  if (s == "one-sided") return FamilyKind::OneSided;
  if (s == "pratt") return FamilyKind::Pratt;
  if (s == "qc") return FamilyKind::QC;
  if (s == "mqc") return FamilyKind::MQC;
  if (s == "mqc-delta") return FamilyKind::MQCDelta;
  throw ConfigError("unknown family '" + s + "'");
}

void MarginalFamily::validate() const {
  if (uses_psi() && !(psi >= 0.5 && psi < 1.0))
    throw ConfigError("psi must lie in [0.5, 1), got " + std::to_string(psi));
  if (kind == FamilyKind::MQCDelta && !(delta > 0.0 && std::isfinite(delta)))
    throw ConfigError("delta must be positive, got " + std::to_string(delta));
  if (!(base.scale > 0.0 && std::isfinite(base.scale))) throw ConfigError("family scale must be positive");
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
}

}  // namespace

QcConstants qc_constants(double alpha, double psi, const LocationFamily& base) {
  check_alpha(alpha);
  if (!(psi >= 0.5 && psi < 1.0)) throw ConfigError("psi must lie in [0.5, 1), got " + std::to_string(psi));
  return {alpha, quantile(base, psi * alpha), quantile(base, (1.0 - psi) * alpha), quantile(base, 0.5 * alpha)};
}

MqcCase mqc_case(const QcConstants& k) {
  if (k.ctilde <= 2.0 * k.cbar + k.chalf) return MqcCase::Low;
  if (k.ctilde <= k.cbar + 2.0 * k.chalf) return MqcCase::Middle;
  return MqcCase::High;
}

PsiBreakpoints mqc_psi_breakpoints(double alpha, const LocationFamily& base) {
  check_alpha(alpha);
  const double chalf = quantile(base, 0.5 * alpha);
  // Parameterize psi = 1 - exp(-s) so the root keeps precision when psi is within
  // 1e-10 of one.
  auto cbar = [&](double s) { return quantile(base, -std::expm1(-s) * alpha); };
  auto ctilde = [&](double s) { return quantile(base, std::exp(-s) * alpha); };
  auto solve = [&](auto&& h) {
    double lo = std::log(2.0), hi = 700.0;
    try {
      double s = find_root(h, lo, hi, 1e-13);
      return -std::expm1(-s);
    } catch (const BracketError&) {
      throw NumericError("psi breakpoints do not bracket for alpha = " + std::to_string(alpha));
    }
  };
  double psi1 = solve([&](double s) { return ctilde(s) - 2.0 * cbar(s) - chalf; });
  double psi2 = solve([&](double s) { return ctilde(s) - cbar(s) - 2.0 * chalf; });
  return {psi1, psi2};
}

double mqc_g(const QcConstants& k, double theta, const LocationFamily& base) {
  return theta + quantile(base, k.alpha - cdf(base, -k.cbar - theta));
}

double mqc_g_inverse(const QcConstants& k, double y, const LocationFamily& base) {
  double lo = std::max(0.0, k.chalf - k.cbar);
  if (mqc_g(k, lo, base) >= y) return lo;
  double hi = k.cbar + k.chalf;
  while (mqc_g(k, hi, base) < y) hi *= 2.0;
  return find_root([&](double t) { return mqc_g(k, t, base) - y; }, lo, hi, 1e-12 * base.scale);
}

double mqc_delta_cbar(double alpha, double delta, const LocationFamily& base) {
  check_alpha(alpha);
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  auto h = [&](double c) { return cdf(base, c) - cdf(base, -2.0 * delta - c) - (1.0 - alpha); };
  double hi = quantile(base, alpha) + base.scale;
  while (h(hi) < 0) hi *= 2.0;
  return find_root(h, -delta, hi, 1e-13 * base.scale);
}

double mqc_delta_g(double alpha, double delta, double cbar, double theta, const LocationFamily& base) {
  return theta + quantile(base, alpha - cdf(base, -delta - cbar - theta));
}

namespace {

Interval symmetric_ci(double y, double c) { return Interval::open(y - c, y + c); }

Interval one_sided_ci(double y, double z) {
  if (y >= z) return {0.0, kInf, false, false};
  if (y <= -z) return {-kInf, 0.0, false, true};
  return Interval::whole();
}

Interval pratt_ci(double y, double z) {
  if (y >= z) return {0.0, y + z, false, false};
  if (y <= -z) return {y - z, 0.0, false, true};
  return Interval::open(y - z, y + z);
}

// Both QC and MQC are built for y >= 0 and reflected.
Interval qc_ci_nonneg(double y, const QcConstants& k) {
  const double c = k.chalf;
  if (y == 0.0) return Interval::open(-k.cbar, k.cbar);
  if (y < k.cbar) return Interval::open(y - k.cbar, y + c);
  if (y < c) return {0.0, y + c, true, false};
  if (y < k.ctilde) return Interval::open(0.0, y + c);
  if (y < k.cbar + k.ctilde) return Interval::open(y - k.ctilde, y + c);
  return Interval::open(y - c, y + c);
}

Interval mqc_ci_nonneg(double y, const QcConstants& k, const LocationFamily& base) {
  const double c = k.chalf;
  if (y < k.cbar) return Interval::open(-k.cbar - c, k.cbar + c);
  if (y < c) return {0.0, y + c, true, false};
  if (y < k.ctilde) return Interval::open(0.0, y + c);
  switch (mqc_case(k)) {
    case MqcCase::Low:
      if (y <= mqc_g(k, k.cbar + c, base)) return Interval::open(mqc_g_inverse(k, y, base), y + c);
      if (y < k.cbar + 2.0 * c) return Interval::open(k.cbar + c, y + c);
      return Interval::open(y - c, y + c);
    case MqcCase::Middle:
      if (y <= k.cbar + 2.0 * c) return Interval::open(k.cbar + c, y + c);
      return Interval::open(y - c, y + c);
    case MqcCase::High:
      break;
  }
  return Interval::open(y - c, y + c);
}

Interval mqc_delta_ci_nonneg(double y, double alpha, double delta, const LocationFamily& base) {
  const double cbar = mqc_delta_cbar(alpha, delta, base);
  const double c = quantile(base, 0.5 * alpha);
  const double edge = delta + cbar + c;
  if (y < delta + cbar) return Interval::open(-edge, edge);
  auto g = [&](double t) { return mqc_delta_g(alpha, delta, cbar, t, base); };
  if (y < g(edge)) {
    if (g(delta) >= y) return Interval::open(delta, y + c);
    double lo = find_root([&](double t) { return g(t) - y; }, delta, edge, 1e-12 * base.scale);
    return Interval::open(lo, y + c);
  }
  if (y < edge + c) return Interval::open(edge, y + c);
  return Interval::open(y - c, y + c);
}

}  // namespace

Interval marginal_interval(const MarginalFamily& fam, double y, double alpha) {
  check_alpha(alpha);
  fam.validate();
  if (!std::isfinite(y)) throw InputError("marginal_interval: y must be finite");
  const LocationFamily& b = fam.base;
  switch (fam.kind) {
    case FamilyKind::Symmetric: return symmetric_ci(y, quantile(b, 0.5 * alpha));
    case FamilyKind::OneSided: return one_sided_ci(y, quantile(b, alpha));
    case FamilyKind::Pratt: return pratt_ci(y, quantile(b, alpha));
    case FamilyKind::QC: {
      auto k = qc_constants(alpha, fam.psi, b);
      return y >= 0 ? qc_ci_nonneg(y, k) : qc_ci_nonneg(-y, k).reflected();
    }
    case FamilyKind::MQC: {
      auto k = qc_constants(alpha, fam.psi, b);
      return y >= 0 ? mqc_ci_nonneg(y, k, b) : mqc_ci_nonneg(-y, k, b).reflected();
    }
    case FamilyKind::MQCDelta:
      return y >= 0 ? mqc_delta_ci_nonneg(y, alpha, fam.delta, b)
                    : mqc_delta_ci_nonneg(-y, alpha, fam.delta, b).reflected();
  }
  throw ConfigError("unknown family");
}

double sign_threshold(const MarginalFamily& fam, double alpha) {
  check_alpha(alpha);
  fam.validate();
  const LocationFamily& b = fam.base;
  switch (fam.kind) {
    case FamilyKind::Symmetric: return quantile(b, 0.5 * alpha);
    case FamilyKind::OneSided:
    case FamilyKind::Pratt: return quantile(b, alpha);
    case FamilyKind::QC:
    case FamilyKind::MQC: return quantile(b, fam.psi * alpha);
    case FamilyKind::MQCDelta: return fam.delta + mqc_delta_cbar(alpha, fam.delta, b);
  }
  throw ConfigError("unknown family");
}

SignDecision family_decision(const MarginalFamily& fam, const Interval& i) {
  if (fam.kind == FamilyKind::MQCDelta) return classify_outside(i, fam.delta);
  return classify(i);
}

}  // namespace sdci
