#pragma once

#include <array>
#include <string>
#include <vector>

#include "sdci/interval.hpp"
#include "sdci/marginal.hpp"

namespace sdci {

// Allele-count table: n[0][j] controls, n[1][j] cases, j = copies of the minor allele.
struct Table2x3 {
  std::array<std::array<double, 3>, 2> n{};
  std::string id;
};

struct BivariateEffect {
  double beta_dom = 0.0;  // log-odds(1 copy) - log-odds(0 copies)
  double beta_rec = 0.0;  // log-odds(2 copies) - log-odds(1 copy)
  double var_dom = 0.0;
  double var_rec = 0.0;
  double cov = 0.0;
};

// Throws InputError on a zero (or negative) cell unless continuity_correction, which
// adds 0.5 to every cell.
BivariateEffect effects_from_table(const Table2x3& t, bool continuity_correction = false);

struct PCDecomposition {
  std::array<double, 2> pc1{};
  double var1 = 0.0;
  std::array<double, 2> pc2{};  // both components >= 0 whenever the covariance is <= 0
  double var2 = 0.0;
};

PCDecomposition principal_components(const BivariateEffect& e);

// Projection of the estimate on pc2 in units of its standard deviation.
double z_pc2(const BivariateEffect& e);

// Signed trend statistic with per-column weights w; positive when cases carry
// higher-weight genotypes.
double cochran_armitage(const Table2x3& t, const std::array<double, 3>& w = {0.0, 1.0, 2.0});

struct RectRegion {
  std::array<double, 2> pc1{};
  std::array<double, 2> pc2{};
  Interval pc1_interval;  // coordinates along pc1 / pc2
  Interval pc2_interval;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double adjusted_alpha2 = 0.0;

  // (1 - alpha1)(1 - alpha2); with alpha1 = 1 the pc1 side is unconstrained and the
  // level is 1 - alpha2.
  double joint_level() const;
  bool contains(double beta_dom, double beta_rec) const;
  // (lo1,lo2), (lo1,hi2), (hi1,lo2), (hi1,hi2) mapped back to (beta_dom, beta_rec);
  // NaN where a side is unbounded.
  std::array<std::array<double, 2>, 4> corners() const;
};

// Symmetric 1-alpha1 interval along pc1 intersected with the family2 interval along pc2
// at level adjusted_alpha2. alpha1 may be 1 (no pc1 constraint).
RectRegion rect_region(const BivariateEffect& e, double alpha1, double alpha2, const MarginalFamily& family2,
                       double adjusted_alpha2);

struct RectSelection {
  bool selected = false;
  SignDecision decision = SignDecision::NotDetermining;
  double z = 0.0;
  RectRegion region;  // unselected units get the unadjusted level-q2 region
};

// Selection on the pc2 scores with family2 at level q2; pc2 sides adjusted to R*q2/m,
// pc1 sides fixed at 1 - q1.
std::vector<RectSelection> rect_sdci(const std::vector<BivariateEffect>& effects, double q1, double q2,
                                     const MarginalFamily& family2);
std::vector<RectSelection> rect_sdci(const std::vector<Table2x3>& tables, double q1, double q2,
                                     const MarginalFamily& family2, bool continuity_correction = false);

}  // namespace sdci
