// Closed-form performance predictions: effective gain G = H F P, per-user
// SQINR and nearest-neighbor SER, and the large-(M, K) asymptotics for the
// one-bit quantized ZF precoder (scaling factor, SQINR limit, error floor).
//
// Model: r = sqrt(rho0/M) H x + n, x = Q(Ps) with entries +-1+-j, sigma_n^2
// the total complex noise variance per user. All asymptotic expressions below
// are the large-(M, K) limits of the exact Bussgang formulas under the
// complex-proper constants; the high-SNR error floor reduces to
// 2Q(sqrt[(2/pi)/(1-2/pi) (M/K-1)]) for equal gains.
#ifndef OBP_ANALYSIS_HPP
#define OBP_ANALYSIS_HPP

#include <armadillo>
#include <vector>

#include "obp/channel.hpp"
#include "obp/precode.hpp"
#include "obp/quantize.hpp"

namespace obp {

// Gaussian upper-tail probability via the complementary error function;
// relative accuracy better than 1e-12 for x <= 8.
double q_function(double x);

// min(1, 2 Q(sqrt(sqinr))); the union bound saturates at 1. Negative input
// is an invalid argument.
double ser_from_sqinr(double sqinr);

// G = sqrt(4/pi) (1/sigma_s) H A.
arma::cx_mat effective_gain(const ChannelMatrix& channel,
                            const Precoder& precoder,
                            double sigma_s2 = kSymbolPower);

struct SqinrReport {
  arma::vec signal_power;        // rho0 |g_kk|^2 sigma_s^2 / M
  arma::vec interference_power;  // rho0 sum_{l != k} |g_kl|^2 sigma_s^2 / M
  arma::vec quant_power;         // rho0 [R_dd]_kk / M
  double noise_power = 0.0;      // sigma_n^2
  arma::vec sqinr;
  arma::vec ser_prediction;  // min(1, 2Q(sqrt(sqinr)))
};

SqinrReport sqinr(const ChannelMatrix& channel, const Precoder& precoder,
                  double rho0, double sigma_s2, double sigma_n2);

struct AsymptoticPrediction {
  double beta = 0.0;          // limit of E[s~_k s_k^*]
  double scale_factor = 0.0;  // sqrt(2)/sigma_s * beta
  arma::vec sqinr_limit;      // per user
  arma::vec floor;            // per user, high-SNR SER
};

// beta = (2 sqrt(2) sigma_s sqrt(rho0) / sqrt(pi)) sqrt(M-K) /
//        sqrt(sum 1/sigma_i^2). Requires M >= K (beta = 0 at M = K).
AsymptoticPrediction asymptotic_scaling(int antennas, int users,
                                        const std::vector<double>& gains,
                                        double rho0,
                                        double sigma_s2 = kSymbolPower);

// SQINR_k -> 8 rho0 (M-K) / (pi sum 1/sigma_i^2)
//            / (4 rho0 (1-2/pi) sigma_k^2 + sigma_n^2).
arma::vec asymptotic_sqinr(int antennas, int users,
                           const std::vector<double>& gains, double rho0,
                           double sigma_n2);

// P_e,k = 2Q( sqrt[ (2/pi)(M/K-1) / ((1-2/pi)(sigma_k^2/K) sum 1/sigma_i^2) ] ).
arma::vec error_floor(int antennas, int users,
                      const std::vector<double>& gains);

}  // namespace obp

#endif
