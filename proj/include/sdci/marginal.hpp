#pragma once

#include <string>

#include "sdci/dist.hpp"
#include "sdci/interval.hpp"

namespace sdci {

enum class FamilyKind { Symmetric, OneSided, Pratt, QC, MQC, MQCDelta };

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

struct MarginalFamily {
  FamilyKind kind = FamilyKind::Symmetric;
  double psi = 0.5;    // QC / MQC
  double delta = 0.0;  // MQCDelta, in the units of the base family
  LocationFamily base{};

  static MarginalFamily symmetric(LocationFamily b = {}) { return {FamilyKind::Symmetric, 0.5, 0.0, b}; }
  static MarginalFamily one_sided(LocationFamily b = {}) { return {FamilyKind::OneSided, 0.5, 0.0, b}; }
  static MarginalFamily pratt(LocationFamily b = {}) { return {FamilyKind::Pratt, 0.5, 0.0, b}; }
  static MarginalFamily qc(double psi, LocationFamily b = {}) { return {FamilyKind::QC, psi, 0.0, b}; }
  static MarginalFamily mqc(double psi, LocationFamily b = {}) { return {FamilyKind::MQC, psi, 0.0, b}; }
  static MarginalFamily mqc_delta(double delta, LocationFamily b = {}) {
    return {FamilyKind::MQCDelta, 0.5, delta, b};
  }

  bool uses_psi() const { return kind == FamilyKind::QC || kind == FamilyKind::MQC; }
  // Throws ConfigError when psi or delta is out of range for the kind.
  void validate() const;
};

// Constants shared by QC and MQC at level alpha:
//   cbar   = c_{psi*alpha}      sign is determined from |y| >= cbar
//   ctilde = F^{-1}(1 - alpha + F(-cbar)) = c_{(1-psi)*alpha}
//   chalf  = c_{alpha/2}
struct QcConstants {
  double alpha;
  double cbar;
  double ctilde;
  double chalf;
};

QcConstants qc_constants(double alpha, double psi, const LocationFamily& base = {});

// Which of the three MQC inversion shapes applies. Decided from the constants:
// ctilde <= 2 cbar + chalf, then ctilde <= cbar + 2 chalf.
enum class MqcCase { Low, Middle, High };
MqcCase mqc_case(const QcConstants& k);

struct PsiBreakpoints {
  double psi1;  // ctilde = 2 cbar + chalf
  double psi2;  // ctilde = cbar + 2 chalf
};
PsiBreakpoints mqc_psi_breakpoints(double alpha, const LocationFamily& base = {});

// Upper acceptance boundary of MQC for 0 < theta <= cbar + chalf:
// theta + F^{-1}(1 - alpha + F(-cbar - theta)).
double mqc_g(const QcConstants& k, double theta, const LocationFamily& base = {});
// Inverse of mqc_g on its increasing branch theta >= max(0, chalf - cbar).
double mqc_g_inverse(const QcConstants& k, double y, const LocationFamily& base = {});

// Large-effect variant: cbar solves F(cbar) - F(-2 delta - cbar) = 1 - alpha.
double mqc_delta_cbar(double alpha, double delta, const LocationFamily& base = {});
double mqc_delta_g(double alpha, double delta, double cbar, double theta, const LocationFamily& base = {});

// The level 1-alpha interval C(y; alpha) of the family.
Interval marginal_interval(const MarginalFamily& fam, double y, double alpha);

// Smallest |y| at which marginal_interval stops crossing zero (for MQCDelta: stops
// meeting [-delta, delta]).
double sign_threshold(const MarginalFamily& fam, double alpha);

// Decision for an interval produced by this family: classify() for every kind except
// MQCDelta, which uses classify_outside(i, delta).
SignDecision family_decision(const MarginalFamily& fam, const Interval& i);

}  // namespace sdci
