#include "sdci/simulation.hpp"

#include <cmath>
#include <numeric>

#include "sdci/errors.hpp"
#include "sdci/parallel.hpp"

namespace sdci {

std::string to_string(ThetaModelKind k) {
  switch (k) {
    case ThetaModelKind::Fixed: return "fixed";
    case ThetaModelKind::ExpNormalMix: return "exp-normal-mix";
    case ThetaModelKind::NormalPrior: return "normal-prior";
    case ThetaModelKind::SparseField: return "sparse-field";
  }
  return "?";
}

ThetaModelKind theta_model_from_string(const std::string& s) {
  if (s == "fixed") return ThetaModelKind::Fixed;
  if (s == "exp-normal-mix") return ThetaModelKind::ExpNormalMix;
  if (s == "normal-prior") return ThetaModelKind::NormalPrior;
  if (s == "sparse-field") return ThetaModelKind::SparseField;
  throw ConfigError("theta_model: unknown model '" + s + "'");
}

std::string to_string(NoiseKind k) { return k == NoiseKind::Independent ? "independent" : "smoothed-field"; }

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "independent") return NoiseKind::Independent;
  if (s == "smoothed-field") return NoiseKind::SmoothedField;
  throw ConfigError("noise: unknown kind '" + s + "'");
}

void SimConfig::validate() const {
  if (m == 0) throw ConfigError("m: must be at least 1");
  if (n_reps == 0) throw ConfigError("reps: must be at least 1");
  try {
    procedure.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("procedure: ") + e.what());
  }
  const bool field = noise == NoiseKind::SmoothedField || theta.kind == ThetaModelKind::SparseField;
  if (field && dims[0] * dims[1] * dims[2] != m)
    throw ConfigError("dims: product " + std::to_string(dims[0] * dims[1] * dims[2]) + " does not equal m = " +
                      std::to_string(m));
  if (noise == NoiseKind::SmoothedField && !(fwhm > 0.0 && std::isfinite(fwhm)))
    throw ConfigError("fwhm: must be positive");
  switch (theta.kind) {
    case ThetaModelKind::Fixed:
      if (theta.values.size() != 1 && theta.values.size() != m)
        throw ConfigError("theta_values: need 1 or m values, got " + std::to_string(theta.values.size()));
      break;
    case ThetaModelKind::ExpNormalMix:
      if (theta.n_exp + theta.n_norm != m) throw ConfigError("n_exp + n_norm: must equal m");
      if (!(theta.exp_mean > 0)) throw ConfigError("exp_mean: must be positive");
      if (!(theta.norm_sd >= 0)) throw ConfigError("norm_sd: must be non-negative");
      break;
    case ThetaModelKind::NormalPrior:
      if (!(theta.sd >= 0)) throw ConfigError("theta_sd: must be non-negative");
      break;
    case ThetaModelKind::SparseField:
      if (!(theta.pi1 >= 0 && theta.pi1 <= 1)) throw ConfigError("pi1: must lie in [0,1]");
      if (!(std::fabs(theta.rho1) < 1)) throw ConfigError("rho1: must lie in (-1,1)");
      if (theta.fisher_n < 4) throw ConfigError("fisher_n: must be at least 4");
      break;
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t rep) {
  std::uint64_t s = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ rep);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(rep)};
  return std::mt19937_64(seq);
}

std::vector<double> draw_theta(const ThetaModel& model, std::size_t m, std::mt19937_64& rng) {
  std::vector<double> theta(m, 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  switch (model.kind) {
    case ThetaModelKind::Fixed:
      if (model.values.size() != 1 && model.values.size() != m)
        throw ConfigError("theta_values: need 1 or m values, got " + std::to_string(model.values.size()));
      for (std::size_t i = 0; i < m; ++i) theta[i] = model.values.size() == 1 ? model.values[0] : model.values[i];
      break;
    case ThetaModelKind::ExpNormalMix: {
      if (model.n_exp + model.n_norm != m) throw ConfigError("n_exp + n_norm: must equal m");
      std::exponential_distribution<double> expo(1.0 / model.exp_mean);
      for (std::size_t i = 0; i < m; ++i)
        theta[i] = i < model.n_exp ? expo(rng) : model.norm_mean + model.norm_sd * normal(rng);
      if (model.random_signs)
        for (double& t : theta)
          if (unif(rng) < 0.5) t = -t;
      break;
    }
    case ThetaModelKind::NormalPrior:
      for (double& t : theta) t = model.sd * normal(rng);
      break;
    case ThetaModelKind::SparseField: {
      const double signal = fisher_z(model.rho1, model.fisher_n);
      for (double& t : theta) t = unif(rng) < model.pi1 ? signal : 0.0;
      break;
    }
  }
  return theta;
}

std::vector<double> smoothed_field_noise(const std::array<std::size_t, 3>& dims, double fwhm,
                                         std::mt19937_64& rng) {
  if (!(fwhm > 0.0)) throw ConfigError("fwhm: must be positive");
  const std::size_t n = dims[0] * dims[1] * dims[2];
  std::vector<double> field(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : field) v = normal(rng);

  const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  const long radius = static_cast<long>(std::ceil(4.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  for (long k = -radius; k <= radius; ++k) w[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));

  // Sum of squared in-range weights at each position along an axis of length len.
  auto energy = [&](std::size_t len) {
    std::vector<double> e(len, 0.0);
    for (std::size_t p = 0; p < len; ++p)
      for (long k = -radius; k <= radius; ++k) {
        long q = static_cast<long>(p) + k;
        if (q >= 0 && q < static_cast<long>(len)) e[p] += w[k + radius] * w[k + radius];
      }
    return e;
  };

  std::vector<double> tmp(n);
  const std::size_t stride[3] = {1, dims[0], dims[0] * dims[1]};
  for (int axis = 0; axis < 3; ++axis) {
    const std::size_t len = dims[axis], st = stride[axis];
    for (std::size_t i = 0; i < n; ++i) {
      const long p = static_cast<long>((i / st) % len);
      double acc = 0.0;
      for (long k = std::max(-radius, -p); k <= radius && p + k < static_cast<long>(len); ++k)
        acc += w[k + radius] * field[i + k * static_cast<long>(st)];
      tmp[i] = acc;
    }
    field.swap(tmp);
  }

  const auto ex = energy(dims[0]), ey = energy(dims[1]), ez = energy(dims[2]);
  for (std::size_t z = 0; z < dims[2]; ++z)
    for (std::size_t y = 0; y < dims[1]; ++y)
      for (std::size_t x = 0; x < dims[0]; ++x)
        field[x + dims[0] * (y + dims[1] * z)] /= std::sqrt(ex[x] * ey[y] * ez[z]);
  return field;
}

SimSummary run(const SimConfig& config) {
  config.validate();
  const std::size_t m = config.m;
  std::vector<double> fixed_theta;
  if (config.theta_fixed_across_reps) {
    auto rng = make_rng(config.seed, 0, 0);
    fixed_theta = draw_theta(config.theta, m, rng);
  }

  std::vector<double> fcp(config.n_reps), wd(config.n_reps), R(config.n_reps);
  parallel_for(config.n_reps, [&](std::size_t rep) {
    std::vector<double> theta;
    if (config.theta_fixed_across_reps) {
      theta = fixed_theta;
    } else {
      auto trng = make_rng(config.seed, 2, rep);
      theta = draw_theta(config.theta, m, trng);
    }
    auto rng = make_rng(config.seed, 1, rep);
    std::vector<double> noise;
    if (config.noise == NoiseKind::SmoothedField) {
      noise = smoothed_field_noise(config.dims, config.fwhm, rng);
    } else {
      noise.resize(m);
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& e : noise) e = normal(rng);
    }
    std::vector<Unit> units(m);
    for (std::size_t i = 0; i < m; ++i) units[i].estimate = theta[i] + noise[i];
    auto res = sdci(units, config.procedure);
    auto met = evaluate(res, theta);
    fcp[rep] = met.fcp;
    wd[rep] = met.wdfdp;
    R[rep] = static_cast<double>(res.R);
  });

  SimSummary s;
  s.reps = config.n_reps;
  const double n = static_cast<double>(config.n_reps);
  s.mean_fcp = mean_of(fcp);
  s.se_fcp = sample_sd(fcp, s.mean_fcp) / std::sqrt(n);
  s.mean_wdfdp = mean_of(wd);
  s.se_wdfdp = sample_sd(wd, s.mean_wdfdp) / std::sqrt(n);
  s.mean_R = mean_of(R);
  for (std::size_t r = 0; r < config.n_reps; ++r)
    if (wd[r] > fcp[r]) ++s.wd_violations;
  return s;
}

RectSimSummary run_rect_fcr(const RectSimConfig& cfg) {
  if (cfg.m == 0 || cfg.n_reps == 0) throw ConfigError("m and reps must be positive");
  if (cfg.n_strong + cfg.n_weak > cfg.m) throw ConfigError("n_strong + n_weak exceeds m");
  const auto pc = principal_components(cfg.covariance);
  const double sd1 = std::sqrt(pc.var1), sd2 = std::sqrt(pc.var2);

  // True effects, fixed across replicates.
  std::vector<std::array<double, 2>> beta(cfg.m);
  {
    auto rng = make_rng(cfg.seed, 0, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < cfg.m; ++i) {
      double a = cfg.pc1_signal_sd * sd1 * normal(rng);
      double b = i < cfg.n_strong ? cfg.strong_z * sd2 : i < cfg.n_strong + cfg.n_weak ? cfg.weak_z * sd2 : 0.0;
      beta[i] = {a * pc.pc1[0] + b * pc.pc2[0], a * pc.pc1[1] + b * pc.pc2[1]};
    }
  }

  std::vector<double> rect(cfg.n_reps), pc2(cfg.n_reps), gap(cfg.n_reps), any(cfg.n_reps);
  parallel_for(cfg.n_reps, [&](std::size_t rep) {
    auto rng = make_rng(cfg.seed, 1, rep);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<BivariateEffect> est(cfg.m);
    for (std::size_t i = 0; i < cfg.m; ++i) {
      double e1 = sd1 * normal(rng), e2 = sd2 * normal(rng);
      est[i] = cfg.covariance;
      est[i].beta_dom = beta[i][0] + e1 * pc.pc1[0] + e2 * pc.pc2[0];
      est[i].beta_rec = beta[i][1] + e1 * pc.pc1[1] + e2 * pc.pc2[1];
    }
    auto sel = rect_sdci(est, cfg.q1, cfg.q2, cfg.family2);
    std::size_t R = 0, miss_rect = 0, miss2 = 0;
    for (std::size_t i = 0; i < cfg.m; ++i) {
      if (!sel[i].selected) continue;
      ++R;
      const auto& r = sel[i].region;
      if (!r.contains(beta[i][0], beta[i][1])) ++miss_rect;
      if (!r.pc2_interval.contains(beta[i][0] * r.pc2[0] + beta[i][1] * r.pc2[1])) ++miss2;
    }
    const double denom = static_cast<double>(std::max<std::size_t>(R, 1));
    rect[rep] = miss_rect / denom;
    pc2[rep] = miss2 / denom;
    any[rep] = R > 0 ? 1.0 : 0.0;
    // Mean zero: given the pc2 data, each selected rectangle misses on pc1 independently
    // with probability q1.
    gap[rep] = rect[rep] - cfg.q1 * any[rep] - (1.0 - cfg.q1) * pc2[rep];
  });

  RectSimSummary s;
  s.reps = cfg.n_reps;
  const double n = static_cast<double>(cfg.n_reps);
  s.mean_fcp_rect = mean_of(rect);
  s.se_fcp_rect = sample_sd(rect, s.mean_fcp_rect) / std::sqrt(n);
  s.mean_fcp_pc2 = mean_of(pc2);
  s.se_fcp_pc2 = sample_sd(pc2, s.mean_fcp_pc2) / std::sqrt(n);
  s.mean_gap = mean_of(gap);
  s.se_gap = sample_sd(gap, s.mean_gap) / std::sqrt(n);
  s.reps_with_selection = static_cast<std::size_t>(std::accumulate(any.begin(), any.end(), 0.0));
  return s;
}

}  // namespace sdci
