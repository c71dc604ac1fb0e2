#include <doctest.h>

#include <cmath>

#include "obp/analysis.hpp"
#include "obp/rng.hpp"

using namespace obp;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent tail-probability oracle: Simpson quadrature of the standard
// normal density from x out to x + 40.
double q_by_quadrature(double x) {
  const double upper = x + 40.0;
  const int steps = 400000;  // even
  const double h = (upper - x) / steps;
  auto pdf = [](double t) {
    return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi);
  };
  double sum = pdf(x) + pdf(upper);
  for (int i = 1; i < steps; ++i)
    sum += pdf(x + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

std::vector<double> equal_gains(int users, double sigma = 1.0) {
  return std::vector<double>(static_cast<std::size_t>(users), sigma);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("q_function agrees with an independent quadrature oracle") {
  CHECK(q_function(0.0) == 0.5);
  for (double x : {0.5, 1.3236, 2.6472, 3.9708}) {
    const double oracle = q_by_quadrature(x);
    CHECK(q_function(x) == doctest::Approx(oracle).epsilon(1e-9));
  }
  // Frozen values.
  CHECK(q_function(1.3236) == doctest::Approx(0.09281796259023495).epsilon(1e-12));
  CHECK(q_function(3.9708) == doctest::Approx(3.581584710418974e-05).epsilon(1e-12));
}

TEST_CASE("ser_from_sqinr fixed points and saturation") {
  CHECK(ser_from_sqinr(0.0) == 1.0);
  CHECK(ser_from_sqinr(15.7675) ==
        doctest::Approx(7.162232899758743e-05).epsilon(1e-12));
  CHECK(ser_from_sqinr(7.00776) ==
        doctest::Approx(8.115715873554957e-03).epsilon(1e-12));
  CHECK_THROWS_AS(ser_from_sqinr(-0.1), InvalidArgument);
  // Monotone decreasing.
  double prev = 1.1;
  for (double s = 0.0; s <= 30.0; s += 0.5) {
    const double v = ser_from_sqinr(s);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("scalar effective gain is sqrt(2/pi) |h|") {
  ChannelMatrix h;
  h.entries = arma::cx_mat(1, 1);
  h.entries(0, 0) = {3.0, 4.0};
  h.gains = arma::vec(1, arma::fill::ones);
  const arma::cx_mat g = effective_gain(h, zf_precoder(h));
  CHECK(std::abs(g(0, 0)) ==
        doctest::Approx(std::sqrt(2.0 / kPi) * 5.0).epsilon(1e-12));
}

TEST_CASE("identity channel and precoder give sqrt(2/pi) I") {
  ChannelMatrix h;
  h.entries = arma::cx_mat(3, 3, arma::fill::eye);
  h.gains = arma::vec(3, arma::fill::ones);
  Precoder p;
  p.matrix = arma::cx_mat(3, 3, arma::fill::eye);
  const arma::cx_mat g = effective_gain(h, p);
  CHECK(g(1, 1).real() == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-12));
  CHECK(std::abs(g(0, 1)) < 1e-14);
}

TEST_CASE("effective gain diagonalizes at large loading") {
  const ChannelMatrix h =
      generate_channel(20, 400, GainProfile::equal(1.0), 61);
  const arma::cx_mat g = effective_gain(h, zf_precoder(h));
  for (int k = 0; k < 20; ++k) {
    const double diag = std::abs(g(k, k));
    for (int l = 0; l < 20; ++l)
      if (l != k) CHECK(std::abs(g(k, l)) < 0.1 * diag);
  }
}

TEST_CASE("sqinr report structure") {
  const ChannelMatrix h = generate_channel(4, 32, GainProfile::equal(1.0), 71);
  const Precoder p = zf_precoder(h);
  SUBCASE("huge noise drives SQINR to zero and SER to one") {
    const SqinrReport r = sqinr(h, p, 1.0, kSymbolPower, 1e12);
    for (int k = 0; k < 4; ++k) {
      CHECK(r.sqinr(k) < 1e-9);
      CHECK(r.ser_prediction(k) == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
  SUBCASE("all components are nonnegative and consistent") {
    const SqinrReport r = sqinr(h, p, 10.0, kSymbolPower, 1.0);
    for (int k = 0; k < 4; ++k) {
      CHECK(r.signal_power(k) >= 0.0);
      CHECK(r.interference_power(k) >= 0.0);
      CHECK(r.quant_power(k) >= 0.0);
      const double expected =
          r.signal_power(k) /
          (r.interference_power(k) + r.quant_power(k) + r.noise_power);
      CHECK(r.sqinr(k) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(r.ser_prediction(k) ==
            doctest::Approx(ser_from_sqinr(r.sqinr(k))).epsilon(1e-12));
    }
  }
}

TEST_CASE("single user has exactly zero interference") {
  const ChannelMatrix h = generate_channel(1, 16, GainProfile::equal(1.0), 73);
  const SqinrReport r = sqinr(h, zf_precoder(h), 5.0, kSymbolPower, 1.0);
  CHECK(r.interference_power(0) == 0.0);
}

TEST_CASE("exact SQINR sits below the asymptotic limit at finite size") {
  // The arcsine R_dd carries a persistent cubic excess over the asymptotic
  // quantization power, so the exact-over-asymptotic ratio settles around
  // 0.7 at rho0 = 10 rather than 1.
  const int users = 16, antennas = 256;
  double mean_ratio = 0.0;
  const int channels = 20;
  for (int c = 0; c < channels; ++c) {
    const ChannelMatrix h = generate_channel(
        users, antennas, GainProfile::equal(1.0), 100 + static_cast<std::uint64_t>(c));
    const SqinrReport r = sqinr(h, zf_precoder(h), 10.0, kSymbolPower, 1.0);
    const arma::vec asym =
        asymptotic_sqinr(antennas, users, equal_gains(users), 10.0, 1.0);
    mean_ratio += arma::mean(r.sqinr / asym) / channels;
  }
  CHECK(mean_ratio > 0.6);
  CHECK(mean_ratio < 1.0);
}

TEST_CASE("asymptotic scaling factor") {
  const AsymptoticPrediction pred =
      asymptotic_scaling(200, 20, equal_gains(20), 1.0);
  CHECK(pred.scale_factor == doctest::Approx(6.770275002573076).epsilon(1e-12));
  // sigma_s = sqrt(2) makes beta equal the scale factor.
  CHECK(pred.beta == doctest::Approx(pred.scale_factor).epsilon(1e-12));

  SUBCASE("no excess antennas, no gain") {
    CHECK(asymptotic_scaling(20, 20, equal_gains(20), 1.0).beta == 0.0);
  }
  SUBCASE("doubling all gains doubles beta") {
    const AsymptoticPrediction doubled =
        asymptotic_scaling(200, 20, equal_gains(20, 2.0), 1.0);
    CHECK(doubled.beta == doctest::Approx(2.0 * pred.beta).epsilon(1e-12));
  }
  SUBCASE("scale factor grows with M at fixed K") {
    double prev = 0.0;
    for (int m : {40, 80, 160, 320, 640}) {
      const double s = asymptotic_scaling(m, 20, equal_gains(20), 1.0).scale_factor;
      CHECK(s > prev);
      prev = s;
    }
  }
  SUBCASE("M < K is rejected") {
    CHECK_THROWS_AS(asymptotic_scaling(19, 20, equal_gains(20), 1.0),
                    InvalidArgument);
  }
}

TEST_CASE("asymptotic SQINR") {
  const arma::vec sq = asymptotic_sqinr(200, 20, equal_gains(20), 10.0, 1.0);
  CHECK(sq(0) == doctest::Approx(14.75249650641581).epsilon(1e-12));

  SUBCASE("infinite noise drives it to zero") {
    const arma::vec v = asymptotic_sqinr(200, 20, equal_gains(20), 10.0, 1e15);
    CHECK(v(0) < 1e-10);
  }
  SUBCASE("high SNR limit is the SQIR behind the error floor") {
    const arma::vec v = asymptotic_sqinr(200, 20, equal_gains(20), 1e12, 0.0);
    const arma::vec fl = error_floor(200, 20, equal_gains(20));
    CHECK(ser_from_sqinr(v(0)) == doctest::Approx(fl(0)).epsilon(1e-9));
  }
}

TEST_CASE("error floors at reference ratios") {
  CHECK(error_floor(20, 20, equal_gains(20))(0) == 1.0);
  CHECK(error_floor(40, 20, equal_gains(20))(0) ==
        doctest::Approx(0.1856332).epsilon(1e-5));
  CHECK(error_floor(100, 20, equal_gains(20))(0) ==
        doctest::Approx(8.115745e-03).epsilon(1e-5));
  CHECK(error_floor(200, 20, equal_gains(20))(0) ==
        doctest::Approx(7.162439e-05).epsilon(1e-5));
  CHECK_THROWS_AS(error_floor(19, 20, equal_gains(20)), InvalidArgument);
}

TEST_CASE("floor decreases strictly in the loading ratio") {
  double prev = 2.0;
  for (int r = 2; r <= 20; ++r) {
    const double f = error_floor(r * 20, 20, equal_gains(20))(0);
    CHECK(f < prev);
    prev = f;
  }
}

TEST_CASE("high-SNR SQIR is exactly linear in M/K") {
  // Slope (2/pi)/(1-2/pi) = 1.75194 per unit of M/K.
  const double slope = (2.0 / kPi) / (1.0 - 2.0 / kPi);
  CHECK(slope == doctest::Approx(1.75194).epsilon(1e-5));
  double prev = 0.0;
  for (int r = 2; r <= 20; ++r) {
    const arma::vec sqir =
        asymptotic_sqinr(r * 20, 20, equal_gains(20), 1.0, 0.0);
    const double expected = slope * (r - 1.0);
    CHECK(sqir(0) == doctest::Approx(expected).epsilon(1e-9));
    if (r > 2) CHECK(sqir(0) - prev == doctest::Approx(slope).epsilon(1e-6));
    prev = sqir(0);
  }
}

TEST_CASE("equal-gain predictions depend on K and M only through M/K") {
  const arma::vec f5 = error_floor(50, 5, equal_gains(5));
  const arma::vec f20 = error_floor(200, 20, equal_gains(20));
  CHECK(f5(0) == doctest::Approx(f20(0)).epsilon(1e-12));
  const arma::vec s5 = asymptotic_sqinr(50, 5, equal_gains(5), 10.0, 1.0);
  const arma::vec s20 = asymptotic_sqinr(200, 20, equal_gains(20), 10.0, 1.0);
  CHECK(s5(0) == doctest::Approx(s20(0)).epsilon(1e-12));
}

TEST_CASE("unequal gains order the per-user floors") {
  // A weaker user (smaller sigma_k) has a lower floor: its own quantization
  // noise shrinks with sigma_k^2 faster than the common signal term.
  const std::vector<double> gains = {0.5, 1.0, 2.0};
  const arma::vec fl = error_floor(30, 3, gains);
  CHECK(fl(0) < fl(1));
  CHECK(fl(1) < fl(2));
}

}  // TEST_SUITE
