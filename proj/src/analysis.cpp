#include "obp/analysis.hpp"

#include <cmath>

namespace obp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

double inverse_gain_power_sum(const std::vector<double>& gains) {
  double sum = 0.0;
  for (double g : gains) {
    if (!(g > 0.0)) throw InvalidArgument("gains must be strictly positive");
    sum += 1.0 / (g * g);
  }
  return sum;
}

void check_loading(int antennas, int users, std::size_t gain_count) {
  if (users < 1) throw InvalidArgument("need at least one user");
  if (antennas < users) throw InvalidArgument("asymptotics need M >= K");
  if (gain_count != static_cast<std::size_t>(users))
    throw InvalidArgument("gain vector length must equal K");
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double ser_from_sqinr(double sqinr) {
  if (sqinr < 0.0) throw InvalidArgument("ser_from_sqinr: negative SQINR");
  return std::min(1.0, 2.0 * q_function(std::sqrt(sqinr)));
}

arma::cx_mat effective_gain(const ChannelMatrix& channel,
                            const Precoder& precoder, double sigma_s2) {
  if (!precoder.full_column_rank())
    throw InvalidArgument("effective_gain: precoder is rank deficient");
  const arma::cx_mat a = normalized_precoder(precoder.matrix);
  return std::sqrt(4.0 / kPi) / std::sqrt(sigma_s2) * (channel.entries * a);
}

SqinrReport sqinr(const ChannelMatrix& channel, const Precoder& precoder,
                  double rho0, double sigma_s2, double sigma_n2) {
  if (rho0 < 0.0 || sigma_n2 < 0.0)
    throw InvalidArgument("sqinr: rho0 and sigma_n2 must be nonnegative");
  const int users = channel.users();
  const double m = channel.antennas();

  const arma::cx_mat g = effective_gain(channel, precoder, sigma_s2);
  const arma::cx_mat rqq = quant_noise_cov(precoder.matrix);
  const arma::cx_mat rdd = received_quant_noise_cov(channel, rqq);

  SqinrReport report;
  report.signal_power.set_size(users);
  report.interference_power.set_size(users);
  report.quant_power.set_size(users);
  report.sqinr.set_size(users);
  report.ser_prediction.set_size(users);
  report.noise_power = sigma_n2;

  for (int k = 0; k < users; ++k) {
    double row_power = 0.0;
    for (int l = 0; l < users; ++l) row_power += std::norm(g(k, l));
    const double diag_power = std::norm(g(k, k));
    report.signal_power(k) = rho0 * diag_power * sigma_s2 / m;
    report.interference_power(k) =
        rho0 * (row_power - diag_power) * sigma_s2 / m;
    report.quant_power(k) = rho0 * rdd(k, k).real() / m;
    const double denom = report.interference_power(k) +
                         report.quant_power(k) + report.noise_power;
    report.sqinr(k) = report.signal_power(k) / denom;
    report.ser_prediction(k) = ser_from_sqinr(report.sqinr(k));
  }
  return report;
}

AsymptoticPrediction asymptotic_scaling(int antennas, int users,
                                        const std::vector<double>& gains,
                                        double rho0, double sigma_s2) {
  check_loading(antennas, users, gains.size());
  if (rho0 < 0.0) throw InvalidArgument("rho0 must be nonnegative");
  const double inv_sum = inverse_gain_power_sum(gains);
  const double sigma_s = std::sqrt(sigma_s2);

  AsymptoticPrediction pred;
  pred.beta = 2.0 * kSqrt2 * sigma_s * std::sqrt(rho0) / std::sqrt(kPi) *
              std::sqrt(static_cast<double>(antennas - users)) /
              std::sqrt(inv_sum);
  pred.scale_factor = kSqrt2 / sigma_s * pred.beta;
  pred.sqinr_limit = asymptotic_sqinr(antennas, users, gains, rho0, 1.0);
  pred.floor = error_floor(antennas, users, gains);
  return pred;
}

arma::vec asymptotic_sqinr(int antennas, int users,
                           const std::vector<double>& gains, double rho0,
                           double sigma_n2) {
  check_loading(antennas, users, gains.size());
  if (rho0 < 0.0 || sigma_n2 < 0.0)
    throw InvalidArgument("rho0 and sigma_n2 must be nonnegative");
  const double inv_sum = inverse_gain_power_sum(gains);
  const double numerator =
      8.0 * rho0 * static_cast<double>(antennas - users) / (kPi * inv_sum);

  arma::vec out(users);
  for (int k = 0; k < users; ++k) {
    const double gain2 = gains[static_cast<std::size_t>(k)] *
                         gains[static_cast<std::size_t>(k)];
    const double denom = 4.0 * rho0 * (1.0 - 2.0 / kPi) * gain2 + sigma_n2;
    out(k) = denom > 0.0 ? numerator / denom : 0.0;
  }
  return out;
}

arma::vec error_floor(int antennas, int users,
                      const std::vector<double>& gains) {
  check_loading(antennas, users, gains.size());
  const double inv_sum = inverse_gain_power_sum(gains);
  const double ratio_term =
      (static_cast<double>(antennas) / users - 1.0) * (2.0 / kPi) /
      (1.0 - 2.0 / kPi);

  arma::vec out(users);
  for (int k = 0; k < users; ++k) {
    const double gain2 = gains[static_cast<std::size_t>(k)] *
                         gains[static_cast<std::size_t>(k)];
    const double sqir = ratio_term / (gain2 / users * inv_sum);
    out(k) = ser_from_sqinr(sqir);
  }
  return out;
}

}  // namespace obp
