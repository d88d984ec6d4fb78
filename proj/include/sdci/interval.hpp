#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace sdci {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Real interval with independently open/closed ends. Infinite ends are always open.
struct Interval {
  double lower = -kInf;
  double upper = kInf;
  bool lower_closed = false;
  bool upper_closed = false;

  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval whole() { return {}; }

  bool valid() const;
  bool contains(double x) const;
  double length() const { return upper - lower; }

  // -I, with the closedness flags swapped to the mirrored ends.
  Interval reflected() const { return {-upper, -lower, upper_closed, lower_closed}; }
  // s * I for s > 0.
  Interval scaled(double s) const { return {s * lower, s * upper, lower_closed, upper_closed}; }

  template <class F>
  Interval mapped(F&& increasing) const {
    return {increasing(lower), increasing(upper), lower_closed, upper_closed};
  }

  bool operator==(const Interval&) const = default;
};

enum class SignDecision { Positive, NonNegative, Negative, NonPositive, NotDetermining };

SignDecision classify(const Interval& i);

// Positive if i lies inside (delta, inf), Negative if inside (-inf, -delta), otherwise
// NotDetermining. With delta = 0 this is the strict sign classification.
SignDecision classify_outside(const Interval& i, double delta);

inline bool determines_sign(SignDecision d) { return d != SignDecision::NotDetermining; }

std::string to_string(SignDecision d);
SignDecision sign_decision_from_string(const std::string& s);

std::string to_string(const Interval& i);

}  // namespace sdci
