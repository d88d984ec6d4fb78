#pragma once

#include <random>
#include <vector>

#include "sdci/interval.hpp"
#include "sdci/marginal.hpp"
#include "sdci/selection.hpp"

namespace sdci::testing {

// a subset of b, honouring open/closed ends
inline bool subset(const Interval& a, const Interval& b) {
  bool lo = b.lower < a.lower || (b.lower == a.lower && (b.lower_closed || !a.lower_closed));
  bool hi = b.upper > a.upper || (b.upper == a.upper && (b.upper_closed || !a.upper_closed));
  return lo && hi;
}

inline std::vector<MarginalFamily> all_families() {
  return {MarginalFamily::symmetric(), MarginalFamily::one_sided(), MarginalFamily::pratt(),
          MarginalFamily::qc(0.85),    MarginalFamily::mqc(0.85),   MarginalFamily::mqc_delta(0.5)};
}

// m in [1, 50]; a mixture of nulls and signals of either sign.
inline std::vector<double> random_z(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> msz(1, 50);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n(0.0, 1.0);
  const int m = msz(rng);
  const double frac = u(rng);
  std::vector<double> z(m);
  for (double& v : z) {
    double mu = u(rng) < frac ? (u(rng) < 0.5 ? -1 : 1) * (1.0 + 3.0 * u(rng)) : 0.0;
    v = mu + n(rng);
  }
  return z;
}

inline std::vector<Unit> as_units(const std::vector<double>& z) {
  std::vector<Unit> u(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) u[i] = {std::to_string(i), z[i], 1.0};
  return u;
}

inline std::vector<bool> selected_set(const SelectionResult& r) {
  std::vector<bool> s;
  for (auto& u : r.units) s.push_back(u.selected);
  return s;
}

}  // namespace sdci::testing
