// One-bit quantization and the Bussgang second-order statistics of a
// quantized linear precoder.
//
// Conventions (complex-proper signals, QPSK symbol power sigma_s^2 = 2):
//   A      = {diag(PP^H)}^{-1/2} P           (unit-norm rows)
//   F*P    = sqrt(4/pi) * (1/sigma_s) * A    (Bussgang linearization)
//   rho    = A A^H                           (normalized input covariance)
//   R_xx   = (4/pi) [asin(Re rho) + j asin(Im rho)]   (arcsine law)
//   R_qq   = R_xx - (4/pi) rho               (quantization noise covariance)
//   R_dd   = H R_qq H^H                      (received quantization noise)
// The arcsine/Bussgang formulas are exact for Gaussian inputs and an
// approximation for QPSK mixtures at finite K.
#ifndef OBP_QUANTIZE_HPP
#define OBP_QUANTIZE_HPP

#include <armadillo>

#include "obp/channel.hpp"
#include "obp/errors.hpp"

namespace obp {

// QPSK symbol power; fixed by the +-1+-j alphabet, not a free parameter.
inline constexpr double kSymbolPower = 2.0;

// Element-wise sign(Re) + j sign(Im) with sign(0) = +1, so quantization is a
// pure function. NaN components signal an upstream numerical failure.
arma::cx_vec quantize_one_bit(const arma::cx_vec& v);

// A = {diag(PP^H)}^{-1/2} P. Throws DegenerateRow if some row of P has zero
// power (that antenna's DAC input would have zero variance).
arma::cx_mat normalized_precoder(const arma::cx_mat& precoder);

// R_xx from the normalized covariance rho. Components are clamped into
// [-1, 1] within 1e-9 slack; beyond that a NumericalDomain error is thrown.
arma::cx_mat rxx_arcsin(const arma::cx_mat& rho);

// R_qq = R_xx - (4/pi) rho for the given precoder; diag(R_qq) = 2(1 - 2/pi)
// exactly.
arma::cx_mat quant_noise_cov(const arma::cx_mat& precoder);

// R_dd = H R_qq H^H.
arma::cx_mat received_quant_noise_cov(const ChannelMatrix& channel,
                                      const arma::cx_mat& rqq);

// Bundle of all second-order objects derived from one precoder.
struct BussgangStats {
  arma::cx_mat normalized;  // A, M x K
  arma::cx_mat rho;         // M x M
  arma::cx_mat rxx;         // M x M
  arma::cx_mat rqq;         // M x M
  double sigma_s2 = kSymbolPower;
};

BussgangStats bussgang_stats(const arma::cx_mat& precoder);

}  // namespace obp

#endif
