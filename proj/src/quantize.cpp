#include "obp/quantize.hpp"

#include <cmath>

namespace obp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClampSlack = 1e-9;

inline double sign_plus(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Clamp an arcsine argument into [-1, 1]; values beyond the slack indicate a
// broken covariance upstream.
inline double clamp_component(double v) {
  if (v > 1.0) {
    if (v > 1.0 + kClampSlack)
      throw NumericalDomain("arcsine argument above 1 beyond slack");
    return 1.0;
  }
  if (v < -1.0) {
    if (v < -1.0 - kClampSlack)
      throw NumericalDomain("arcsine argument below -1 beyond slack");
    return -1.0;
  }
  return v;
}

}  // namespace

arma::cx_vec quantize_one_bit(const arma::cx_vec& v) {
  arma::cx_vec out(v.n_elem);
  for (arma::uword i = 0; i < v.n_elem; ++i) {
    const double re = v(i).real();
    const double im = v(i).imag();
    if (std::isnan(re) || std::isnan(im))
      throw NumericalDomain("quantize_one_bit: NaN input component");
    out(i) = std::complex<double>(sign_plus(re), sign_plus(im));
  }
  return out;
}

arma::cx_mat normalized_precoder(const arma::cx_mat& precoder) {
  arma::cx_mat a(precoder.n_rows, precoder.n_cols);
  for (arma::uword i = 0; i < precoder.n_rows; ++i) {
    double power = 0.0;
    for (arma::uword k = 0; k < precoder.n_cols; ++k)
      power += std::norm(precoder(i, k));
    if (!(power > 0.0))
      throw DegenerateRow("normalized_precoder: zero-power precoder row");
    const double inv = 1.0 / std::sqrt(power);
    for (arma::uword k = 0; k < precoder.n_cols; ++k)
      a(i, k) = precoder(i, k) * inv;
  }
  return a;
}

arma::cx_mat rxx_arcsin(const arma::cx_mat& rho) {
  if (rho.n_rows != rho.n_cols)
    throw InvalidArgument("rxx_arcsin: rho must be square");
  arma::cx_mat rxx(rho.n_rows, rho.n_cols);
  const double c = 4.0 / kPi;
  for (arma::uword j = 0; j < rho.n_cols; ++j) {
    for (arma::uword i = 0; i < rho.n_rows; ++i) {
      const double re = clamp_component(rho(i, j).real());
      const double im = clamp_component(rho(i, j).imag());
      rxx(i, j) = std::complex<double>(c * std::asin(re), c * std::asin(im));
    }
  }
  return rxx;
}

arma::cx_mat quant_noise_cov(const arma::cx_mat& precoder) {
  const arma::cx_mat a = normalized_precoder(precoder);
  const arma::cx_mat rho = a * a.t();  // A A^H, unit diagonal
  arma::cx_mat rqq = rxx_arcsin(rho);
  rqq -= (4.0 / kPi) * rho;
  // Unit-diagonal rho makes diag(R_qq) = 2(1 - 2/pi) analytically; pin it
  // exactly against rounding in A A^H.
  const double d = 2.0 * (1.0 - 2.0 / kPi);
  for (arma::uword i = 0; i < rqq.n_rows; ++i)
    rqq(i, i) = std::complex<double>(d, 0.0);
  return rqq;
}

arma::cx_mat received_quant_noise_cov(const ChannelMatrix& channel,
                                      const arma::cx_mat& rqq) {
  if (rqq.n_rows != rqq.n_cols ||
      rqq.n_rows != static_cast<arma::uword>(channel.antennas()))
    throw InvalidArgument("received_quant_noise_cov: dimension mismatch");
  return channel.entries * rqq * channel.entries.t();
}

BussgangStats bussgang_stats(const arma::cx_mat& precoder) {
  BussgangStats stats;
  stats.normalized = normalized_precoder(precoder);
  stats.rho = stats.normalized * stats.normalized.t();
  stats.rxx = rxx_arcsin(stats.rho);
  stats.rqq = stats.rxx - (4.0 / kPi) * stats.rho;
  const double d = 2.0 * (1.0 - 2.0 / kPi);
  for (arma::uword i = 0; i < stats.rqq.n_rows; ++i) {
    stats.rxx(i, i) = std::complex<double>(2.0, 0.0);
    stats.rqq(i, i) = std::complex<double>(d, 0.0);
  }
  return stats;
}

}  // namespace obp
