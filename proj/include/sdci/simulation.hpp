#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sdci/bivariate.hpp"
#include "sdci/selection.hpp"

namespace sdci {

enum class ThetaModelKind { Fixed, ExpNormalMix, NormalPrior, SparseField };

std::string to_string(ThetaModelKind k);
ThetaModelKind theta_model_from_string(const std::string& s);

struct ThetaModel {
  ThetaModelKind kind = ThetaModelKind::NormalPrior;
  std::vector<double> values;  // Fixed; a single value is broadcast to all m units
  // ExpNormalMix
  std::size_t n_exp = 160;
  double exp_mean = 0.5;
  std::size_t n_norm = 40;
  double norm_mean = 3.0;
  double norm_sd = 1.0;
  bool random_signs = true;
  // NormalPrior
  double sd = 2.0;
  // SparseField: theta = fisher_z(rho1, fisher_n) with probability pi1, else 0
  double pi1 = 0.1;
  double rho1 = 0.3;
  int fisher_n = 16;
};

enum class NoiseKind { Independent, SmoothedField };

std::string to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& s);

struct SimConfig {
  std::size_t m = 300;
  ThetaModel theta;
  NoiseKind noise = NoiseKind::Independent;
  std::array<std::size_t, 3> dims{0, 0, 0};
  double fwhm = 4.7;
  ProcedureConfig procedure;
  std::size_t n_reps = 1000;
  std::uint64_t seed = 1;
  bool theta_fixed_across_reps = true;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct SimSummary {
  double mean_fcp = 0.0;
  double se_fcp = 0.0;
  double mean_wdfdp = 0.0;
  double se_wdfdp = 0.0;
  double mean_R = 0.0;
  std::size_t reps = 0;
  // Replicates where wdFDP exceeded FCP. Always zero for a correct implementation.
  std::size_t wd_violations = 0;
};

// Independent engine for (seed, stream, rep), so replicates can run in any order.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t rep);

std::vector<double> draw_theta(const ThetaModel& model, std::size_t m, std::mt19937_64& rng);

// White noise smoothed by a separable Gaussian kernel (sd = fwhm / (2 sqrt(2 ln 2)),
// cut at 4 sd, no wraparound), rescaled so every voxel has unit variance.
// Layout: index = x + nx * (y + ny * z).
std::vector<double> smoothed_field_noise(const std::array<std::size_t, 3>& dims, double fwhm,
                                         std::mt19937_64& rng);

SimSummary run(const SimConfig& config);

// Rectangles built from pc2 selection, compared to the pc2 intervals alone.
struct RectSimConfig {
  std::size_t m = 100;
  double q1 = 0.01;
  double q2 = 0.05;
  MarginalFamily family2 = MarginalFamily::symmetric();
  BivariateEffect covariance{0.0, 0.0, 0.005806, 0.00475, -0.001704};  // betas unused
  // Signal along pc2 in pc2 standard deviations, for the first n_strong / n_weak units.
  std::size_t n_strong = 40;
  double strong_z = 5.0;
  std::size_t n_weak = 20;
  double weak_z = 1.5;
  double pc1_signal_sd = 1.0;  // pc1 offsets ~ N(0, (sd * sd1)^2), drawn once
  std::size_t n_reps = 2000;
  std::uint64_t seed = 1;
};

struct RectSimSummary {
  double mean_fcp_rect = 0.0;
  double se_fcp_rect = 0.0;
  double mean_fcp_pc2 = 0.0;
  double se_fcp_pc2 = 0.0;
  // Per replicate: fcp_rect - q1 - (1 - q1) * fcp_pc2 when something was selected.
  double mean_gap = 0.0;
  double se_gap = 0.0;
  std::size_t reps = 0;
  std::size_t reps_with_selection = 0;
};

RectSimSummary run_rect_fcr(const RectSimConfig& config);

}  // namespace sdci
