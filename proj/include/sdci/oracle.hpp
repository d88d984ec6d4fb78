#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sdci/interval.hpp"
#include "sdci/marginal.hpp"

namespace sdci {

// Brute-force references for checking the closed-form intervals.

struct GridSpec {
  double lo = -12.0;
  double hi = 12.0;
  double step = 1e-4;

  void validate() const;
  // Points are k * step for integer k in [ceil(lo/step), floor(hi/step)], so 0 is
  // always a grid point when lo <= 0 <= hi.
  std::size_t size() const;
  double at(std::size_t i) const;
};

using AcceptanceRegion = std::function<Interval(double theta)>;

// [min, max] of the grid points theta with y in ar(theta). NumericError if none.
Interval invert_acceptance_grid(const AcceptanceRegion& ar, double y, const GridSpec& grid);

// Same as invert_acceptance_grid, with the region evaluated once per grid point so that
// many y values can be inverted cheaply.
class AcceptanceTable {
 public:
  AcceptanceTable(const AcceptanceRegion& ar, const GridSpec& grid);
  Interval invert(double y) const;

 private:
  bool accepts(std::size_t i, double y) const;
  // A block can hold an accepting point only if its smallest lower end is <= y and its
  // largest upper end is >= y.
  bool block_may_accept(std::size_t b, double y) const { return block_lo_[b] <= y && block_hi_[b] >= y; }
  static constexpr std::size_t kBlock = 256;
  GridSpec grid_;
  std::vector<double> lo_, hi_;
  std::vector<unsigned char> flags_;
  std::vector<double> block_lo_, block_hi_;
};

// Acceptance regions A(theta) of the non-equivariant families, reflected for theta < 0.
// At theta = 0 the region is (-c_{alpha/2}, c_{alpha/2}), the effective region that the
// convex hull actually sees.
Interval qc_acceptance(double theta, double alpha, double psi, const LocationFamily& base = {});
Interval mqc_acceptance(double theta, double alpha, double psi, const LocationFamily& base = {});
Interval mqc_delta_acceptance(double theta, double alpha, double delta, const LocationFamily& base = {});
// Effective MQC regions: {y : theta in C(y)} without any hull, valid in the low-psi case.
Interval mqc_effective_acceptance(double theta, double alpha, double psi, const LocationFamily& base = {});

// P_theta(theta in C(Y; alpha)). Intervals are tabulated over y once; each call locates
// the y-boundaries where coverage switches and refines them by bisection on the closed
// form, then sums exact cdf differences.
class CoverageOracle {
 public:
  CoverageOracle(MarginalFamily fam, double alpha, double y_lo = -30.0, double y_hi = 30.0, double step = 0.01);
  double coverage(double theta) const;

 private:
  MarginalFamily fam_;
  double alpha_;
  std::vector<double> ys_;
  std::vector<Interval> cis_;
};

double coverage_quadrature(const MarginalFamily& fam, double theta, double alpha);

// R by the literal definition: the largest r whose level r*q/m interval for the unit
// with the r-th largest |z| does not cross zero.
std::size_t naive_R(const std::vector<double>& z, const MarginalFamily& fam, double q);

// P_theta(|Y| >= cbar and theta not in the MQC interval) for Y ~ N(theta, 1), from the
// effective acceptance regions. Requires the low-psi case.
double noncover_sign_prob(double theta, double alpha, double psi);

// psi solving ctilde + cbar = 2 c_{alpha/4}.
double psi_star(double alpha);

}  // namespace sdci
