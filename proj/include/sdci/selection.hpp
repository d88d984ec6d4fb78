#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sdci/interval.hpp"
#include "sdci/marginal.hpp"

namespace sdci {

struct Unit {
  std::string id;
  double estimate = 0.0;
  double sd = 1.0;
};

enum class DependencyMode { Independent, GeneralDependency };

std::string to_string(DependencyMode d);
DependencyMode dependency_mode_from_string(const std::string& s);

struct ProcedureConfig {
  double q = 0.05;
  MarginalFamily family{};
  DependencyMode dependency = DependencyMode::Independent;

  void validate() const;
  // q, or q / (1 + 1/2 + ... + 1/m) under general dependency.
  double effective_q(std::size_t m) const;
};

double harmonic_number(std::size_t m);

// r * q / m, formed as q * (r / m) so that r = m gives exactly q.
inline double adjusted_level(double q, std::size_t r, std::size_t m) {
  return q * (static_cast<double>(r) / static_cast<double>(m));
}

struct UnitResult {
  std::string id;
  bool selected = false;
  SignDecision decision = SignDecision::NotDetermining;
  std::optional<Interval> interval;  // on the estimate scale; absent when unselected
  double adjusted_alpha = 0.0;
};

struct SelectionResult {
  std::size_t R = 0;
  double adjusted_alpha = 0.0;  // R * q_eff / m, zero when R = 0
  std::vector<UnitResult> units;
};

// Selects every unit whose level R*q/m interval does not cross zero and reports that
// interval, rescaled by the unit's sd. Runs the step-up on the sign thresholds.
SelectionResult sdci(const std::vector<Unit>& units, const ProcedureConfig& cfg);

// BH on two-sided p-values, sign decided by the estimate. No intervals.
SelectionResult bh_directional(const std::vector<Unit>& units, double q);

// Intervals at level R_min * q / m for the chosen units, in the order given.
std::vector<Interval> by_adjust(const std::vector<std::size_t>& selected, std::size_t R_min,
                                const std::vector<Unit>& units, const MarginalFamily& family, double q);

struct ErrorMetrics {
  std::size_t R_ci = 0;
  std::size_t V_ci = 0;
  double fcp = 0.0;
  std::size_t R_d = 0;
  std::size_t V_d = 0;
  double wdfdp = 0.0;
};

// Is `d` a wrong directional statement about theta? theta = 0 is compatible with the
// weak labels (non-negative, non-positive) only.
bool is_direction_error(SignDecision d, double theta);

ErrorMetrics evaluate(const SelectionResult& result, const std::vector<double>& truth);

}  // namespace sdci
