#include "sdci/interval.hpp"

#include <cstdio>

#include "sdci/errors.hpp"

namespace sdci {

bool Interval::valid() const {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) return false;
  if (std::isinf(lower) && lower_closed) return false;
  if (std::isinf(upper) && upper_closed) return false;
  return true;
}

bool Interval::contains(double x) const {
  bool above = lower_closed ? x >= lower : x > lower;
  bool below = upper_closed ? x <= upper : x < upper;
  return above && below;
}

namespace {

// every point > t
bool strictly_above(const Interval& i, double t) {
  return i.lower > t || (i.lower == t && !i.lower_closed);
}
bool strictly_below(const Interval& i, double t) {
  return i.upper < t || (i.upper == t && !i.upper_closed);
}

}  // namespace

SignDecision classify(const Interval& i) {
  if (strictly_above(i, 0.0)) return SignDecision::Positive;
  if (strictly_below(i, 0.0)) return SignDecision::Negative;
  if (i.lower == 0.0) return SignDecision::NonNegative;  // closed at 0
  if (i.upper == 0.0) return SignDecision::NonPositive;
  return SignDecision::NotDetermining;
}

SignDecision classify_outside(const Interval& i, double delta) {
  if (strictly_above(i, delta)) return SignDecision::Positive;
  if (strictly_below(i, -delta)) return SignDecision::Negative;
  return SignDecision::NotDetermining;
}

std::string to_string(SignDecision d) {
  switch (d) {
    case SignDecision::Positive: return "positive";
    case SignDecision::NonNegative: return "non-negative";
    case SignDecision::Negative: return "negative";
    case SignDecision::NonPositive: return "non-positive";
    case SignDecision::NotDetermining: return "none";
  }
  return "none";
}

SignDecision sign_decision_from_string(const std::string& s) {
  if (s == "positive") return SignDecision::Positive;
  if (s == "non-negative") return SignDecision::NonNegative;
  if (s == "negative") return SignDecision::Negative;
  if (s == "non-positive") return SignDecision::NonPositive;
  if (s == "none") return SignDecision::NotDetermining;
  throw InputError("unknown sign decision '" + s + "'");
}

std::string to_string(const Interval& i) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%c%.10g, %.10g%c", i.lower_closed ? '[' : '(', i.lower, i.upper,
                i.upper_closed ? ']' : ')');
  return buf;
}

}  // namespace sdci
