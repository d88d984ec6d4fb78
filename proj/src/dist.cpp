#include "sdci/dist.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sdci/errors.hpp"

namespace sdci {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double std_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }
double std_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

// Acklam's rational approximation (rel. error ~1e-9) for the lower tail, p <= 0.5,
// followed by Halley steps against erfc.
double std_lower_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  double x;
  if (p < 0.02425) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    double q = p - 0.5;
    double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  for (int it = 0; it < 2; ++it) {
    double e = std_cdf(x) - p;
    double u = e / std_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double std_inv_cdf(double u) {
  if (u > 0.5) return -std_lower_quantile(1.0 - u);
  return std_lower_quantile(u);
}

void check_prob(double p, const char* what) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError(std::string(what) + ": probability must lie in (0,1), got " + std::to_string(p));
}

}  // namespace

double pdf(const LocationFamily& fam, double x) { return std_pdf(x / fam.scale) / fam.scale; }

double cdf(const LocationFamily& fam, double x) {
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return std_cdf(x / fam.scale);
}

double inv_cdf(const LocationFamily& fam, double u) {
  check_prob(u, "inv_cdf");
  return fam.scale * std_inv_cdf(u);
}

double quantile(const LocationFamily& fam, double p) {
  check_prob(p, "quantile");
  // c_p = -F^{-1}(p) by symmetry; F^{-1}(p) is accurate for small p.
  return -fam.scale * std_inv_cdf(p);
}

double find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo <= hi)) throw BracketError("find_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi) || (flo > 0) == (fhi > 0))
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
  const bool rising = fhi > 0;
  for (int it = 0; it < 400 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == rising)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double fisher_z(double r, int n) {
  if (!(std::fabs(r) < 1.0)) throw DomainError("fisher_z: |r| must be < 1");
  if (n < 4) throw DomainError("fisher_z: n must be at least 4");
  return std::atanh(r) * std::sqrt(static_cast<double>(n - 3));
}

double fisher_z_inv(double z, int n) {
  if (n < 4) throw DomainError("fisher_z_inv: n must be at least 4");
  return std::tanh(z / std::sqrt(static_cast<double>(n - 3)));
}

}  // namespace sdci
