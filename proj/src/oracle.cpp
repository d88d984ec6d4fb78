#include "sdci/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "sdci/errors.hpp"
#include "sdci/selection.hpp"

namespace sdci {

void GridSpec::validate() const {
  if (!(lo < hi) || !(step > 0.0)) throw ConfigError("grid: need lo < hi and step > 0");
}

std::size_t GridSpec::size() const {
  validate();
  const double k0 = std::ceil(lo / step), k1 = std::floor(hi / step);
  return k1 < k0 ? 0 : static_cast<std::size_t>(k1 - k0) + 1;
}

double GridSpec::at(std::size_t i) const { return (std::ceil(lo / step) + static_cast<double>(i)) * step; }

Interval invert_acceptance_grid(const AcceptanceRegion& ar, double y, const GridSpec& grid) {
  const std::size_t n = grid.size();
  bool found = false;
  double lo = 0, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.at(i);
    if (!ar(t).contains(y)) continue;
    if (!found) lo = t;
    hi = t;
    found = true;
  }
  if (!found) throw NumericError("invert_acceptance_grid: no grid point accepts y = " + std::to_string(y));
  return {lo, hi, true, true};
}

AcceptanceTable::AcceptanceTable(const AcceptanceRegion& ar, const GridSpec& grid) : grid_(grid) {
  const std::size_t n = grid.size();
  lo_.resize(n);
  hi_.resize(n);
  flags_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Interval a = ar(grid.at(i));
    lo_[i] = a.lower;
    hi_[i] = a.upper;
    flags_[i] = static_cast<unsigned char>((a.lower_closed ? 1 : 0) | (a.upper_closed ? 2 : 0));
  }
  const std::size_t nb = (n + kBlock - 1) / kBlock;
  block_lo_.assign(nb, kInf);
  block_hi_.assign(nb, -kInf);
  for (std::size_t i = 0; i < n; ++i) {
    block_lo_[i / kBlock] = std::min(block_lo_[i / kBlock], lo_[i]);
    block_hi_[i / kBlock] = std::max(block_hi_[i / kBlock], hi_[i]);
  }
}

bool AcceptanceTable::accepts(std::size_t i, double y) const {
  const bool above = (flags_[i] & 1) ? y >= lo_[i] : y > lo_[i];
  const bool below = (flags_[i] & 2) ? y <= hi_[i] : y < hi_[i];
  return above && below;
}

Interval AcceptanceTable::invert(double y) const {
  const std::size_t n = lo_.size(), nb = block_lo_.size();
  std::size_t first = n;
  for (std::size_t b = 0; b < nb && first == n; ++b) {
    if (!block_may_accept(b, y)) continue;
    for (std::size_t i = b * kBlock; i < std::min(n, (b + 1) * kBlock); ++i)
      if (accepts(i, y)) {
        first = i;
        break;
      }
  }
  if (first == n) throw NumericError("AcceptanceTable: no grid point accepts y = " + std::to_string(y));
  std::size_t last = first;
  for (std::size_t b = nb; b-- > first / kBlock;) {
    if (!block_may_accept(b, y)) continue;
    bool found = false;
    for (std::size_t i = std::min(n, (b + 1) * kBlock); i-- > std::max(first, b * kBlock);)
      if (accepts(i, y)) {
        last = i;
        found = true;
        break;
      }
    if (found) break;
  }
  return {grid_.at(first), grid_.at(last), true, true};
}

namespace {

template <class Positive>
Interval reflect_for_negative(double theta, double chalf, Positive&& positive) {
  if (theta == 0.0) return Interval::open(-chalf, chalf);
  return theta > 0 ? positive(theta) : positive(-theta).reflected();
}

}  // namespace

Interval qc_acceptance(double theta, double alpha, double psi, const LocationFamily& base) {
  const auto k = qc_constants(alpha, psi, base);
  return reflect_for_negative(theta, k.chalf, [&](double t) {
    if (t <= k.cbar) return Interval::open(t - k.cbar, t + k.ctilde);
    if (t <= k.chalf) return Interval::open(0.0, t + quantile(base, alpha - cdf(base, -t)));
    return Interval::open(t - k.chalf, t + k.chalf);
  });
}

Interval mqc_acceptance(double theta, double alpha, double psi, const LocationFamily& base) {
  const auto k = qc_constants(alpha, psi, base);
  return reflect_for_negative(theta, k.chalf, [&](double t) {
    if (t <= k.cbar + k.chalf) return Interval::open(-k.cbar, mqc_g(k, t, base));
    return Interval::open(t - k.chalf, t + k.chalf);
  });
}

Interval mqc_delta_acceptance(double theta, double alpha, double delta, const LocationFamily& base) {
  const double cbar = mqc_delta_cbar(alpha, delta, base);
  const double c = quantile(base, 0.5 * alpha);
  auto positive = [&](double t) {
    if (t <= delta) return Interval::open(-delta - cbar, delta + cbar);
    if (t < delta + cbar + c) return Interval::open(-delta - cbar, mqc_delta_g(alpha, delta, cbar, t, base));
    return Interval::open(t - c, t + c);
  };
  return theta >= 0 ? positive(theta) : positive(-theta).reflected();
}

Interval mqc_effective_acceptance(double theta, double alpha, double psi, const LocationFamily& base) {
  const auto k = qc_constants(alpha, psi, base);
  if (mqc_case(k) != MqcCase::Low) throw DomainError("effective acceptance regions need the low-psi case");
  return reflect_for_negative(theta, k.chalf, [&](double t) {
    if (t <= k.ctilde - k.cbar) return Interval::open(-k.cbar, k.ctilde);
    if (t <= k.cbar + k.chalf) return Interval::open(-k.cbar, mqc_g(k, t, base));
    return Interval::open(t - k.chalf, t + k.chalf);
  });
}

CoverageOracle::CoverageOracle(MarginalFamily fam, double alpha, double y_lo, double y_hi, double step)
    : fam_(fam), alpha_(alpha) {
  const std::size_t n = static_cast<std::size_t>(std::floor((y_hi - y_lo) / step)) + 1;
  ys_.resize(n);
  cis_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ys_[i] = y_lo + static_cast<double>(i) * step;
    cis_[i] = marginal_interval(fam_, ys_[i], alpha_);
  }
}

double CoverageOracle::coverage(double theta) const {
  const LocationFamily& b = fam_.base;
  auto covers = [&](double y) { return marginal_interval(fam_, y, alpha_).contains(theta); };
  // Boundary between grid points a (state sa) and c, refined to ~1e-13.
  auto boundary = [&](double a, double c, bool sa) {
    for (int it = 0; it < 200 && c - a > 1e-13 * std::max(1.0, std::fabs(a)); ++it) {
      double mid = 0.5 * (a + c);
      if (mid <= a || mid >= c) break;
      if (covers(mid) == sa)
        a = mid;
      else
        c = mid;
    }
    return 0.5 * (a + c);
  };
  // P(Y in (u, v)) for Y ~ theta + F, using the smaller tail on each side.
  auto mass = [&](double u, double v) {
    const double lo = u - theta, hi = v - theta;
    if (lo >= 0) return cdf(b, -lo) - cdf(b, -hi);
    if (hi <= 0) return cdf(b, hi) - cdf(b, lo);
    return 1.0 - cdf(b, lo) - cdf(b, -hi);
  };

  double total = 0.0;
  bool inside = cis_[0].contains(theta);
  double start = -kInf;  // runs touching either end extend to infinity
  for (std::size_t i = 1; i < ys_.size(); ++i) {
    const bool now = cis_[i].contains(theta);
    if (now == inside) continue;
    const double edge = boundary(ys_[i - 1], ys_[i], inside);
    if (inside) total += mass(start, edge);
    else start = edge;
    inside = now;
  }
  if (inside) total += mass(start, kInf);
  return total;
}

double coverage_quadrature(const MarginalFamily& fam, double theta, double alpha) {
  return CoverageOracle(fam, alpha).coverage(theta);
}

std::size_t naive_R(const std::vector<double>& z, const MarginalFamily& fam, double q) {
  const std::size_t m = z.size();
  std::vector<double> sorted(z);
  std::sort(sorted.begin(), sorted.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
  for (std::size_t r = m; r >= 1; --r) {
    Interval ci = marginal_interval(fam, sorted[r - 1], adjusted_level(q, r, m));
    if (determines_sign(family_decision(fam, ci))) return r;
  }
  return 0;
}

double noncover_sign_prob(double theta, double alpha, double psi) {
  const auto k = qc_constants(alpha, psi);
  const Interval a = mqc_effective_acceptance(std::fabs(theta), alpha, psi);
  const double t = std::fabs(theta), cb = k.cbar;
  auto below = [&](double x) { return cdf(x - t); };   // P(Y <= x)
  auto above = [&](double x) { return cdf(t - x); };   // P(Y >= x)
  auto between = [&](double u, double v) { return u < v ? std::max(0.0, below(v) - below(u)) : 0.0; };
  // {Y not in (l, u)} intersected with {|Y| >= cbar}
  double p = below(std::min(a.lower, -cb)) + above(std::max(a.upper, cb));
  if (a.lower > cb) p += between(cb, a.lower);
  if (a.upper < -cb) p += between(a.upper, -cb);
  return p;
}

double psi_star(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double target = 2.0 * quantile(0.25 * alpha);
  auto h = [&](double s) { return quantile(std::exp(-s) * alpha) + quantile(-std::expm1(-s) * alpha) - target; };
  return -std::expm1(-find_root(h, std::log(2.0), 700.0, 1e-13));
}

}  // namespace sdci
