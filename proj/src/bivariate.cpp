#include "sdci/bivariate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "sdci/errors.hpp"
#include "sdci/selection.hpp"

namespace sdci {

BivariateEffect effects_from_table(const Table2x3& t, bool continuity_correction) {
  std::array<std::array<double, 3>, 2> n = t.n;
  for (auto& row : n)
    for (double& v : row) {
      if (!std::isfinite(v) || v < 0) throw InputError("table '" + t.id + "': counts must be non-negative");
      if (continuity_correction) v += 0.5;
      if (v == 0.0) throw InputError("table '" + t.id + "': zero cell (enable the continuity correction)");
    }
  double g[3];
  for (int j = 0; j < 3; ++j) g[j] = std::log(n[1][j] / n[0][j]);
  auto inv = [&](int j) { return 1.0 / n[0][j] + 1.0 / n[1][j]; };
  BivariateEffect e;
  e.beta_dom = g[1] - g[0];
  e.beta_rec = g[2] - g[1];
  e.var_dom = inv(0) + inv(1);
  e.var_rec = inv(1) + inv(2);
  e.cov = -inv(1);
  return e;
}

PCDecomposition principal_components(const BivariateEffect& e) {
  Eigen::Matrix2d s;
  s << e.var_dom, e.cov, e.cov, e.var_rec;
  if (!s.allFinite() || e.var_dom <= 0 || e.var_rec <= 0 || s.determinant() <= 0)
    throw NumericError("covariance matrix is not positive definite");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(s);
  if (es.info() != Eigen::Success) throw NumericError("eigen decomposition failed");
  // eigenvalues ascending
  double v2 = es.eigenvalues()(0), v1 = es.eigenvalues()(1);
  Eigen::Vector2d u2 = es.eigenvectors().col(0);
  if (v1 - v2 <= 1e-14 * v1) {
    // isotropic: every direction is principal, pick the diagonal
    const double h = std::sqrt(0.5);
    u2 = Eigen::Vector2d(h, h);
  }
  if (u2(0) + u2(1) < 0) u2 = -u2;
  PCDecomposition pc;
  pc.pc2 = {u2(0), u2(1)};
  pc.pc1 = {-u2(1), u2(0)};
  pc.var1 = v1;
  pc.var2 = v2;
  return pc;
}

double z_pc2(const BivariateEffect& e) {
  auto pc = principal_components(e);
  return (e.beta_dom * pc.pc2[0] + e.beta_rec * pc.pc2[1]) / std::sqrt(pc.var2);
}

double cochran_armitage(const Table2x3& t, const std::array<double, 3>& w) {
  double r1 = 0, r2 = 0, col[3];
  for (int j = 0; j < 3; ++j) {
    if (t.n[0][j] < 0 || t.n[1][j] < 0) throw InputError("table '" + t.id + "': negative count");
    r1 += t.n[0][j];
    r2 += t.n[1][j];
    col[j] = t.n[0][j] + t.n[1][j];
  }
  const double N = r1 + r2;
  double stat = 0, s1 = 0, s2 = 0;
  for (int j = 0; j < 3; ++j) {
    stat += w[j] * (t.n[1][j] * r1 - t.n[0][j] * r2);
    s1 += w[j] * w[j] * col[j] * (N - col[j]);
    for (int k = j + 1; k < 3; ++k) s2 += w[j] * w[k] * col[j] * col[k];
  }
  const double var = r1 * r2 / N * (s1 - 2.0 * s2);
  if (!(r1 > 0 && r2 > 0) || !(var > 0))
    throw InputError("table '" + t.id + "': degenerate margins for the trend test");
  return stat / std::sqrt(var);
}

double RectRegion::joint_level() const {
  if (alpha1 >= 1.0) return 1.0 - alpha2;
  return (1.0 - alpha1) * (1.0 - alpha2);
}

bool RectRegion::contains(double beta_dom, double beta_rec) const {
  double s1 = beta_dom * pc1[0] + beta_rec * pc1[1];
  double s2 = beta_dom * pc2[0] + beta_rec * pc2[1];
  return pc1_interval.contains(s1) && pc2_interval.contains(s2);
}

std::array<std::array<double, 2>, 4> RectRegion::corners() const {
  std::array<std::array<double, 2>, 4> out;
  const double a[2] = {pc1_interval.lower, pc1_interval.upper};
  const double b[2] = {pc2_interval.lower, pc2_interval.upper};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto& c = out[2 * i + j];
      if (!std::isfinite(a[i]) || !std::isfinite(b[j])) {
        c = {nan, nan};
        continue;
      }
      c = {a[i] * pc1[0] + b[j] * pc2[0], a[i] * pc1[1] + b[j] * pc2[1]};
    }
  return out;
}

RectRegion rect_region(const BivariateEffect& e, double alpha1, double alpha2, const MarginalFamily& family2,
                       double adjusted_alpha2) {
  if (!(alpha1 > 0.0 && alpha1 <= 1.0)) throw DomainError("alpha1 must lie in (0,1]");
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw DomainError("alpha2 must lie in (0,1)");
  if (!(adjusted_alpha2 > 0.0 && adjusted_alpha2 < 1.0)) throw DomainError("adjusted alpha2 must lie in (0,1)");
  auto pc = principal_components(e);
  RectRegion r;
  r.pc1 = pc.pc1;
  r.pc2 = pc.pc2;
  r.alpha1 = alpha1;
  r.alpha2 = alpha2;
  r.adjusted_alpha2 = adjusted_alpha2;
  const double s1 = e.beta_dom * pc.pc1[0] + e.beta_rec * pc.pc1[1];
  const double s2 = e.beta_dom * pc.pc2[0] + e.beta_rec * pc.pc2[1];
  const double sd1 = std::sqrt(pc.var1), sd2 = std::sqrt(pc.var2);
  if (alpha1 < 1.0) {
    const double c = quantile(0.5 * alpha1);
    r.pc1_interval = Interval::open(s1 - c * sd1, s1 + c * sd1);
  }
  r.pc2_interval = marginal_interval(family2, s2 / sd2, adjusted_alpha2).scaled(sd2);
  return r;
}

std::vector<RectSelection> rect_sdci(const std::vector<BivariateEffect>& effects, double q1, double q2,
                                     const MarginalFamily& family2) {
  if (effects.empty()) throw DomainError("no effects supplied");
  std::vector<Unit> units(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i) {
    auto pc = principal_components(effects[i]);
    const auto& e = effects[i];
    units[i] = {std::to_string(i), e.beta_dom * pc.pc2[0] + e.beta_rec * pc.pc2[1], std::sqrt(pc.var2)};
  }
  auto sel = sdci(units, ProcedureConfig{q2, family2, DependencyMode::Independent});
  std::vector<RectSelection> out(effects.size());
  for (std::size_t i = 0; i < effects.size(); ++i) {
    auto& o = out[i];
    o.selected = sel.units[i].selected;
    o.decision = sel.units[i].decision;
    o.z = units[i].estimate / units[i].sd;
    o.region = rect_region(effects[i], q1, q2, family2, o.selected ? sel.adjusted_alpha : q2);
  }
  return out;
}

std::vector<RectSelection> rect_sdci(const std::vector<Table2x3>& tables, double q1, double q2,
                                     const MarginalFamily& family2, bool continuity_correction) {
  std::vector<BivariateEffect> effects;
  effects.reserve(tables.size());
  for (const auto& t : tables) effects.push_back(effects_from_table(t, continuity_correction));
  return rect_sdci(effects, q1, q2, family2);
}

}  // namespace sdci
