// Deterministic, parallel Monte Carlo SER estimation.
//
// Trial model: x per encoder, r = sqrt(rho0/M) H x + n with n proper complex
// Gaussian of total variance sigma_n^2 per user, decision s_hat_k = Q(r_k),
// an error being s_hat_k != s_k. Noiseless mode sets n = 0 exactly.
//
// Seeds: channel c of SNR point p is generated from
// derive_seed(master, kChannelEntries, p, c); symbol vector t and its noise
// from derive_seed(master, kSymbols|kNoise, p, c, t). Channel, symbol, and
// noise draws therefore do not depend on the encoder list (paired
// comparisons) or on the worker count; error counts are integers reduced
// associatively, so results are bit-identical for any number of workers.
#ifndef OBP_MONTECARLO_HPP
#define OBP_MONTECARLO_HPP

#include <armadillo>
#include <cstdint>
#include <string>
#include <vector>

#include "obp/analysis.hpp"
#include "obp/channel.hpp"
#include "obp/mlenc.hpp"
#include "obp/precode.hpp"

namespace obp {

enum class Encoder { kZeroForcing, kMrt, kAdaptedAlg1, kMaximumLikelihood };

const char* to_string(Encoder encoder);

struct ExperimentConfig {
  int users = 0;
  int antennas = 0;
  GainProfile profile;
  std::vector<Encoder> encoders = {Encoder::kZeroForcing};
  std::vector<double> snr_db;  // rho0 = 10^(dB/10), sigma_n^2 = 1
  bool noiseless = false;      // single point with n = 0 exactly
  int channels_per_point = 0;
  int symbols_per_channel = 1;
  std::uint64_t master_seed = 0;
  int workers = 0;  // 0: hardware concurrency
  // Channels used for the attached finite-size Bussgang prediction (averaged
  // exact-SQINR SER over the first such channels of each point).
  int analytic_channels = 32;

  std::uint64_t trials() const {
    return static_cast<std::uint64_t>(channels_per_point) *
           static_cast<std::uint64_t>(symbols_per_channel);
  }
};

// Two-sided 95% binomial confidence interval for errors/trials:
// Clopper-Pearson (exact) below 20 errors, normal approximation otherwise.
struct BinomialCi {
  double lower = 0.0;
  double upper = 1.0;
};
BinomialCi binomial_ci(std::uint64_t errors, std::uint64_t trials,
                       double confidence = 0.95);

struct EncoderPointResult {
  Encoder encoder = Encoder::kZeroForcing;
  std::vector<std::uint64_t> user_errors;  // length K
  std::uint64_t trials_per_user = 0;
  std::uint64_t adapted_selected = 0;  // Algorithm 1 only: symbol vectors
                                       // precoded with H^dagger D

  std::uint64_t total_errors() const;
  double pooled_ser() const;
  BinomialCi pooled_ci() const;
};

struct SerPoint {
  double snr_db = 0.0;
  double rho0 = 1.0;
  bool noiseless = false;
  std::vector<EncoderPointResult> encoders;
  // Attached predictions for the first linear encoder of the config (NaN for
  // pure-ML configs): exact Bussgang averaged over sample channels, and the
  // asymptotic formula with the config's mean gain profile.
  double analytic_finite = 0.0;
  double analytic_asymptotic = 0.0;
};

struct SerCurve {
  ExperimentConfig config;
  std::vector<SerPoint> points;
};

// One trial of one encoder: returns per-user error indicators. noise_seed
// seeds the noise draw only; the symbol vector and channel are inputs.
std::vector<int> run_trial(const ChannelMatrix& channel, Encoder encoder,
                           const arma::cx_vec& symbols, double rho0,
                           double sigma_n2, std::uint64_t noise_seed);

// Full sweep: channels x symbols per SNR point, all encoders paired on
// identical channel/symbol/noise draws.
SerCurve estimate_ser(const ExperimentConfig& config);

// Noiseless received points s~ = sqrt(rho0/M) H Q(Ps) under ZF for a fixed
// symbol vector, over channel realizations and a list of antenna counts.
struct ScatterCapture {
  struct Point {
    int antennas = 0;
    int user = 0;
    std::complex<double> received;
    std::complex<double> intended;
  };
  std::vector<Point> points;
};

ScatterCapture capture_scatter(int users, const std::vector<int>& antenna_list,
                               const arma::cx_vec& symbols, int channels,
                               double rho0, std::uint64_t master_seed);

// Simulated vs analytic scaling factor (sqrt(2)/sigma_s * beta convention).
// The simulated value is the pooled regression gain of s~ on s over
// users/symbols/channels, times sqrt(2)*sigma_s.
struct ScalingEstimate {
  int antennas = 0;
  double simulated = 0.0;
  double analytic = 0.0;
};

std::vector<ScalingEstimate> estimate_scaling(
    int users, const std::vector<int>& antenna_grid, int channels,
    int symbols_per_channel, double rho0, const GainProfile& profile,
    std::uint64_t master_seed, int workers = 0);

}  // namespace obp

#endif
