#include <doctest.h>

#include <cmath>

#include "obp/montecarlo.hpp"
#include "obp/rng.hpp"

using namespace obp;

namespace {

arma::cx_vec random_qpsk(int users, std::uint64_t seed) {
  Rng rng(seed);
  arma::cx_vec s(users);
  for (int k = 0; k < users; ++k) s(k) = rng.qpsk();
  return s;
}

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.users = 4;
  config.antennas = 16;
  config.profile = GainProfile::equal(1.0);
  config.encoders = {Encoder::kZeroForcing, Encoder::kAdaptedAlg1};
  config.snr_db = {0.0, 10.0};
  config.channels_per_point = 40;
  config.symbols_per_channel = 5;
  config.master_seed = 77;
  return config;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("noiseless single-user ZF never errs") {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const ChannelMatrix h =
        generate_channel(1, 8, GainProfile::equal(1.0), 500 + i);
    const auto ind = run_trial(h, Encoder::kZeroForcing, random_qpsk(1, i),
                               1.0, 0.0, i);
    CHECK(ind[0] == 0);
  }
}

TEST_CASE("zero transmit power gives 3/4 error probability") {
  const ChannelMatrix h = generate_channel(4, 16, GainProfile::equal(1.0), 3);
  std::uint64_t errors = 0, total = 0;
  for (std::uint64_t t = 0; t < 30000; ++t) {
    const auto ind = run_trial(h, Encoder::kZeroForcing, random_qpsk(4, t),
                               0.0, 1.0, 1000 + t);
    for (int v : ind) errors += static_cast<std::uint64_t>(v);
    total += 4;
  }
  CHECK(static_cast<double>(errors) / total ==
        doctest::Approx(0.75).epsilon(0.015));
}

TEST_CASE("run_trial is deterministic") {
  const ChannelMatrix h = generate_channel(3, 12, GainProfile::equal(1.0), 9);
  const arma::cx_vec s = random_qpsk(3, 4);
  const auto a = run_trial(h, Encoder::kZeroForcing, s, 2.0, 1.0, 42);
  const auto b = run_trial(h, Encoder::kZeroForcing, s, 2.0, 1.0, 42);
  CHECK(a == b);
}

TEST_CASE("config validation") {
  ExperimentConfig config = small_config();
  SUBCASE("zero trials") {
    config.channels_per_point = 0;
    CHECK_THROWS_AS(estimate_ser(config), InvalidArgument);
  }
  SUBCASE("no SNR grid without noiseless flag") {
    config.snr_db.clear();
    CHECK_THROWS_AS(estimate_ser(config), InvalidArgument);
  }
  SUBCASE("ML capacity") {
    config.antennas = 16;
    config.encoders = {Encoder::kMaximumLikelihood};
    CHECK_THROWS_AS(estimate_ser(config), CapacityError);
  }
  SUBCASE("K > M") {
    config.users = 20;
    config.antennas = 16;
    CHECK_THROWS_AS(estimate_ser(config), InvalidArgument);
  }
}

TEST_CASE("error counts are identical across worker counts") {
  ExperimentConfig config = small_config();
  config.workers = 1;
  const SerCurve one = estimate_ser(config);
  config.workers = 2;
  const SerCurve two = estimate_ser(config);
  config.workers = 4;
  const SerCurve four = estimate_ser(config);
  for (std::size_t p = 0; p < one.points.size(); ++p) {
    for (std::size_t e = 0; e < one.points[p].encoders.size(); ++e) {
      CHECK(one.points[p].encoders[e].user_errors ==
            two.points[p].encoders[e].user_errors);
      CHECK(one.points[p].encoders[e].user_errors ==
            four.points[p].encoders[e].user_errors);
      CHECK(one.points[p].encoders[e].adapted_selected ==
            two.points[p].encoders[e].adapted_selected);
      CHECK(one.points[p].encoders[e].adapted_selected ==
            four.points[p].encoders[e].adapted_selected);
    }
  }
}

TEST_CASE("channel and noise draws do not depend on the encoder list") {
  ExperimentConfig zf_only;
  zf_only.users = 2;
  zf_only.antennas = 6;
  zf_only.profile = GainProfile::equal(1.0);
  zf_only.encoders = {Encoder::kZeroForcing};
  zf_only.snr_db = {5.0};
  zf_only.channels_per_point = 60;
  zf_only.symbols_per_channel = 4;
  zf_only.master_seed = 11;

  ExperimentConfig paired = zf_only;
  paired.encoders = {Encoder::kZeroForcing, Encoder::kMaximumLikelihood};

  const SerCurve a = estimate_ser(zf_only);
  const SerCurve b = estimate_ser(paired);
  CHECK(a.points[0].encoders[0].user_errors ==
        b.points[0].encoders[0].user_errors);
}

TEST_CASE("noiseless mode reports the floor regime") {
  ExperimentConfig config;
  config.users = 4;
  config.antennas = 40;
  config.profile = GainProfile::equal(1.0);
  config.encoders = {Encoder::kZeroForcing};
  config.noiseless = true;
  config.channels_per_point = 300;
  config.symbols_per_channel = 10;
  config.master_seed = 5;
  const SerCurve curve = estimate_ser(config);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].noiseless);
  // M/K = 10: SER should be deep below 1e-2 noiselessly.
  CHECK(curve.points[0].encoders[0].pooled_ser() < 1e-2);
  // Analytic attachments populated.
  CHECK(std::isfinite(curve.points[0].analytic_finite));
  CHECK(std::isfinite(curve.points[0].analytic_asymptotic));
}

TEST_CASE("binomial confidence intervals") {
  SUBCASE("degenerate cases") {
    const BinomialCi empty = binomial_ci(0, 0);
    CHECK(empty.lower == 0.0);
    CHECK(empty.upper == 1.0);
    const BinomialCi none = binomial_ci(0, 100);
    CHECK(none.lower == 0.0);
    CHECK(none.upper < 0.05);
    CHECK(none.upper > 0.02);  // Clopper-Pearson: 1-(a/2)^(1/n) ~ 0.036
  }
  SUBCASE("exact interval for few errors") {
    // Frozen from an external beta-quantile computation: e=5, n=100 gives
    // [0.016552, 0.112828].
    const BinomialCi ci = binomial_ci(5, 100);
    CHECK(ci.lower == doctest::Approx(0.016552).epsilon(2e-3));
    CHECK(ci.upper == doctest::Approx(0.112828).epsilon(2e-3));
  }
  SUBCASE("normal approximation for many errors") {
    const BinomialCi ci = binomial_ci(400, 10000);
    const double p = 0.04;
    const double hw = 1.959963985 * std::sqrt(p * (1 - p) / 10000.0);
    CHECK(ci.lower == doctest::Approx(p - hw).epsilon(1e-6));
    CHECK(ci.upper == doctest::Approx(p + hw).epsilon(1e-6));
  }
}

TEST_CASE("scatter capture counts and quadrant concentration") {
  const arma::cx_vec s = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const ScatterCapture capture =
      capture_scatter(4, {20, 100, 300}, s, 100, 1.0, 13);
  REQUIRE(capture.points.size() == 3 * 100 * 4);

  double mean_abs_re[3] = {0, 0, 0};
  double mean_re_user0[3] = {0, 0, 0};
  double mean_im_user0[3] = {0, 0, 0};
  const int antenna_of[3] = {20, 100, 300};
  for (const auto& point : capture.points) {
    const int mi = point.antennas == 20 ? 0 : (point.antennas == 100 ? 1 : 2);
    mean_abs_re[mi] += std::abs(point.received.real()) / 400.0;
    if (point.user == 0) {
      mean_re_user0[mi] += point.received.real() / 100.0;
      mean_im_user0[mi] += point.received.imag() / 100.0;
    }
    CHECK(std::isfinite(point.received.real()));
  }
  (void)antenna_of;
  // Deeper into the decision region as M grows.
  CHECK(mean_abs_re[2] > mean_abs_re[1]);
  CHECK(mean_abs_re[1] > mean_abs_re[0]);
  // User 0 sends 1+j; at M/K = 25 its cloud concentrates in that quadrant.
  CHECK(mean_re_user0[1] > 0.0);
  CHECK(mean_im_user0[1] > 0.0);
}

TEST_CASE("scaling estimates track the asymptotic prediction") {
  const auto estimates = estimate_scaling(20, {40, 200, 400}, 400, 2, 1.0,
                                          GainProfile::equal(1.0), 211);
  REQUIRE(estimates.size() == 3);
  for (const auto& e : estimates) CHECK(e.simulated > 0.0);
  // M/K >= 10: within 5%.
  CHECK(estimates[1].simulated / estimates[1].analytic ==
        doctest::Approx(1.0).epsilon(0.05));
  CHECK(estimates[2].simulated / estimates[2].analytic ==
        doctest::Approx(1.0).epsilon(0.05));
  // Small loading (M/K = 2) carries a visible positive finite-size bias.
  const double dev2 = estimates[0].simulated / estimates[0].analytic - 1.0;
  CHECK(dev2 > 0.005);
  CHECK(dev2 < 0.05);
  // The bias shrinks as the loading grows.
  CHECK(std::abs(estimates[2].simulated / estimates[2].analytic - 1.0) < dev2);
}

TEST_CASE("scaling rejects grids at or below K") {
  CHECK_THROWS_AS(estimate_scaling(20, {20}, 10, 1, 1.0,
                                   GainProfile::equal(1.0), 1),
                  InvalidArgument);
}

TEST_CASE("more antennas lower the whole sweep at fixed K") {
  ExperimentConfig config;
  config.users = 20;
  config.profile = GainProfile::equal(1.0);
  config.encoders = {Encoder::kZeroForcing};
  config.snr_db = {-5.0, 0.0};
  config.channels_per_point = 1500;
  config.symbols_per_channel = 40;
  config.master_seed = 99;

  config.antennas = 100;
  const SerCurve narrow = estimate_ser(config);
  config.antennas = 200;
  const SerCurve wide = estimate_ser(config);
  for (std::size_t p = 0; p < narrow.points.size(); ++p)
    CHECK(wide.points[p].encoders[0].pooled_ser() <
          narrow.points[p].encoders[0].pooled_ser());
}

}  // TEST_SUITE
