#pragma once

#include <functional>

namespace sdci {

// Symmetric unimodal location family. Only the standard normal is built; `scale`
// stretches it to N(0, scale^2) so scale-equivariance can be exercised directly.
struct LocationFamily {
  enum class Kind { StandardNormal };
  Kind kind = Kind::StandardNormal;
  double scale = 1.0;
};

double pdf(const LocationFamily& fam, double x);
double cdf(const LocationFamily& fam, double x);

// F^{-1}(u) for u in (0,1).
double inv_cdf(const LocationFamily& fam, double u);

// Upper quantile c_p = F^{-1}(1 - p). Computed without forming 1 - p, so small p
// keeps full relative accuracy.
double quantile(const LocationFamily& fam, double p);

inline double cdf(double x) { return cdf(LocationFamily{}, x); }
inline double quantile(double p) { return quantile(LocationFamily{}, p); }

// Bisection on a monotone function with f(lo) and f(hi) of opposite sign (or one zero).
// Stops once the bracket is narrower than tol. Throws BracketError otherwise.
double find_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

// atanh(r) * sqrt(n - 3), the z-scale of a sample correlation from n pairs.
double fisher_z(double r, int n);
double fisher_z_inv(double z, int n);

}  // namespace sdci
