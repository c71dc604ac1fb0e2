#include "obp/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>

#include "obp/rng.hpp"

namespace obp {
namespace {

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic work distribution: any scheduling is fine because every
// channel's contribution is accumulated into its own slot.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::min(resolve_workers(workers), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double log_binomial_pmf(std::uint64_t n, std::uint64_t i, double p) {
  const double nd = static_cast<double>(n);
  const double id = static_cast<double>(i);
  return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) -
         std::lgamma(nd - id + 1.0) + id * std::log(p) +
         (nd - id) * std::log1p(-p);
}

double binomial_cdf(std::uint64_t upto, std::uint64_t n, double p) {
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return upto >= n ? 1.0 : 0.0;
  double sum = 0.0;
  for (std::uint64_t i = 0; i <= upto; ++i)
    sum += std::exp(log_binomial_pmf(n, i, p));
  return std::min(sum, 1.0);
}

// Smallest p in [0,1] with binomial_cdf(upto; n, p) <= target (CDF is
// decreasing in p).
double solve_cdf(std::uint64_t upto, std::uint64_t n, double target) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_cdf(upto, n, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double z_for_confidence(double confidence) {
  // Q(z) = (1 - confidence)/2, bisection on the tail.
  const double tail = 0.5 * (1.0 - confidence);
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > tail)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

constexpr std::uint64_t kExactCiThreshold = 20;

struct EncoderState {
  Encoder encoder;
  std::optional<Precoder> linear;           // ZF / MRT
  std::optional<Algorithm1Context> alg1;
};

std::vector<EncoderState> build_states(const std::vector<Encoder>& encoders,
                                       const ChannelMatrix& channel) {
  std::vector<EncoderState> states;
  states.reserve(encoders.size());
  for (Encoder e : encoders) {
    EncoderState st;
    st.encoder = e;
    switch (e) {
      case Encoder::kZeroForcing:
        st.linear = zf_precoder(channel);
        break;
      case Encoder::kMrt:
        st.linear = mrt_precoder(channel);
        break;
      case Encoder::kAdaptedAlg1:
        st.alg1.emplace(channel);
        break;
      case Encoder::kMaximumLikelihood:
        break;
    }
    states.push_back(std::move(st));
  }
  return states;
}

arma::cx_vec draw_symbols(int users, std::uint64_t seed) {
  Rng rng(seed);
  arma::cx_vec s(users);
  for (int k = 0; k < users; ++k) s(k) = rng.qpsk();
  return s;
}

arma::cx_vec draw_noise(int users, double sigma_n2, std::uint64_t seed) {
  Rng rng(seed);
  arma::cx_vec n(users);
  for (int k = 0; k < users; ++k) n(k) = rng.complex_gaussian(sigma_n2);
  return n;
}

// Transmit vector for one encoder and symbol vector; sets *used_adapted for
// Algorithm 1.
arma::cx_vec encode_symbols(const EncoderState& state,
                            const ChannelMatrix& channel,
                            const arma::cx_vec& symbols, bool* used_adapted) {
  switch (state.encoder) {
    case Encoder::kZeroForcing:
    case Encoder::kMrt:
      return quantize_one_bit(state.linear->matrix * symbols);
    case Encoder::kAdaptedAlg1: {
      const Algorithm1Result sel = state.alg1->select(symbols);
      if (used_adapted) *used_adapted = sel.used_adapted;
      return quantize_one_bit(sel.precoded);
    }
    case Encoder::kMaximumLikelihood:
      return ml_encode(symbols, channel).x;
  }
  throw InvalidArgument("unknown encoder");
}

struct PointTotals {
  // [encoder][user]
  std::vector<std::vector<std::uint64_t>> errors;
  std::vector<std::uint64_t> adapted_selected;  // [encoder]
};

void validate_config(const ExperimentConfig& config) {
  if (config.users < 1 || config.antennas < config.users)
    throw InvalidArgument("estimate_ser: need 1 <= K <= M");
  if (config.encoders.empty())
    throw InvalidArgument("estimate_ser: no encoders configured");
  if (config.trials() == 0)
    throw InvalidArgument("estimate_ser: zero trials would give an empty curve");
  if (!config.noiseless && config.snr_db.empty())
    throw InvalidArgument("estimate_ser: empty SNR grid and not noiseless");
  for (Encoder e : config.encoders)
    if (e == Encoder::kMaximumLikelihood && config.antennas > kMlMaxAntennas)
      throw CapacityError("estimate_ser: ML encoder limited to M <= 12");
}

// Exact-Bussgang and asymptotic SER predictions attached to a point,
// averaged over the first `analytic_channels` channel realizations of that
// point (same derived seeds as the Monte Carlo channels).
void attach_analytics(const ExperimentConfig& config, std::size_t point_index,
                      double rho0, double sigma_n2, SerPoint* point) {
  Encoder analytic_encoder = config.encoders.front();
  bool have_linear = false;
  for (Encoder e : config.encoders) {
    if (e != Encoder::kMaximumLikelihood) {
      analytic_encoder = e;
      have_linear = true;
      break;
    }
  }
  if (!have_linear) {
    point->analytic_finite = std::nan("");
    point->analytic_asymptotic = std::nan("");
    return;
  }
  const int sample = std::min(config.analytic_channels,
                              config.channels_per_point);
  double finite_sum = 0.0;
  double asym_sum = 0.0;
  for (int c = 0; c < sample; ++c) {
    const std::uint64_t channel_seed =
        derive_seed(config.master_seed, SeedStream::kChannelEntries,
                    point_index, static_cast<std::uint64_t>(c));
    const ChannelMatrix channel = generate_channel(
        config.users, config.antennas, config.profile, channel_seed);
    const Precoder precoder = analytic_encoder == Encoder::kMrt
                                  ? mrt_precoder(channel)
                                  : zf_precoder(channel);
    const SqinrReport report =
        sqinr(channel, precoder, rho0, kSymbolPower, sigma_n2);
    finite_sum += arma::mean(report.ser_prediction);

    std::vector<double> gains(channel.gains.begin(), channel.gains.end());
    const arma::vec asym =
        asymptotic_sqinr(config.antennas, config.users, gains, rho0, sigma_n2);
    double ser = 0.0;
    for (double s : asym) ser += ser_from_sqinr(s);
    asym_sum += ser / config.users;
  }
  point->analytic_finite = sample > 0 ? finite_sum / sample : std::nan("");
  point->analytic_asymptotic = sample > 0 ? asym_sum / sample : std::nan("");
}

}  // namespace

const char* to_string(Encoder encoder) {
  switch (encoder) {
    case Encoder::kZeroForcing: return "zf";
    case Encoder::kMrt: return "mrt";
    case Encoder::kAdaptedAlg1: return "alg1";
    case Encoder::kMaximumLikelihood: return "ml";
  }
  return "?";
}

BinomialCi binomial_ci(std::uint64_t errors, std::uint64_t trials,
                       double confidence) {
  if (trials == 0) return {0.0, 1.0};
  const double alpha = 1.0 - confidence;
  BinomialCi ci;
  const double p_hat = static_cast<double>(errors) / trials;
  if (errors >= kExactCiThreshold) {
    const double z = z_for_confidence(confidence);
    const double hw = z * std::sqrt(p_hat * (1.0 - p_hat) /
                                    static_cast<double>(trials));
    ci.lower = std::max(0.0, p_hat - hw);
    ci.upper = std::min(1.0, p_hat + hw);
    return ci;
  }
  // Clopper-Pearson; the partial CDF sums have at most `errors` + 1 terms.
  ci.lower = errors == 0 ? 0.0 : solve_cdf(errors - 1, trials, 1.0 - alpha / 2);
  ci.upper = errors == trials ? 1.0 : solve_cdf(errors, trials, alpha / 2);
  return ci;
}

std::uint64_t EncoderPointResult::total_errors() const {
  std::uint64_t sum = 0;
  for (std::uint64_t e : user_errors) sum += e;
  return sum;
}

double EncoderPointResult::pooled_ser() const {
  const std::uint64_t n = trials_per_user * user_errors.size();
  return n == 0 ? 0.0 : static_cast<double>(total_errors()) / n;
}

BinomialCi EncoderPointResult::pooled_ci() const {
  return binomial_ci(total_errors(), trials_per_user * user_errors.size());
}

std::vector<int> run_trial(const ChannelMatrix& channel, Encoder encoder,
                           const arma::cx_vec& symbols, double rho0,
                           double sigma_n2, std::uint64_t noise_seed) {
  if (static_cast<int>(symbols.n_elem) != channel.users())
    throw InvalidArgument("run_trial: symbol vector length != K");
  const std::vector<EncoderState> states =
      build_states({encoder}, channel);
  arma::cx_vec x = encode_symbols(states[0], channel, symbols, nullptr);
  arma::cx_vec r = std::sqrt(rho0 / channel.antennas()) * (channel.entries * x);
  if (sigma_n2 > 0.0)
    r += draw_noise(channel.users(), sigma_n2, noise_seed);
  const arma::cx_vec decided = quantize_one_bit(r);
  std::vector<int> indicators(static_cast<std::size_t>(channel.users()));
  for (int k = 0; k < channel.users(); ++k)
    indicators[static_cast<std::size_t>(k)] = decided(k) != symbols(k) ? 1 : 0;
  return indicators;
}

SerCurve estimate_ser(const ExperimentConfig& config) {
  validate_config(config);
  const int n_enc = static_cast<int>(config.encoders.size());
  const int users = config.users;
  const std::size_t n_points = config.noiseless ? 1 : config.snr_db.size();

  SerCurve curve;
  curve.config = config;
  curve.points.resize(n_points);

  for (std::size_t p = 0; p < n_points; ++p) {
    SerPoint& point = curve.points[p];
    point.noiseless = config.noiseless;
    point.snr_db = config.noiseless ? 0.0 : config.snr_db[p];
    point.rho0 = config.noiseless
                     ? 1.0
                     : std::pow(10.0, config.snr_db[p] / 10.0);
    const double sigma_n2 = config.noiseless ? 0.0 : 1.0;
    const double scale = std::sqrt(point.rho0 / config.antennas);

    // Per-channel slots, merged in index order afterwards.
    std::vector<PointTotals> per_channel(
        static_cast<std::size_t>(config.channels_per_point));

    parallel_for(config.channels_per_point, config.workers, [&](int c) {
      PointTotals totals;
      totals.errors.assign(static_cast<std::size_t>(n_enc),
                           std::vector<std::uint64_t>(
                               static_cast<std::size_t>(users), 0));
      totals.adapted_selected.assign(static_cast<std::size_t>(n_enc), 0);

      const std::uint64_t channel_seed =
          derive_seed(config.master_seed, SeedStream::kChannelEntries, p,
                      static_cast<std::uint64_t>(c));
      const ChannelMatrix channel = generate_channel(
          users, config.antennas, config.profile, channel_seed);
      const std::vector<EncoderState> states =
          build_states(config.encoders, channel);

      for (int t = 0; t < config.symbols_per_channel; ++t) {
        const arma::cx_vec s = draw_symbols(
            users, derive_seed(config.master_seed, SeedStream::kSymbols, p,
                               static_cast<std::uint64_t>(c),
                               static_cast<std::uint64_t>(t)));
        arma::cx_vec noise;
        if (sigma_n2 > 0.0)
          noise = draw_noise(
              users, sigma_n2,
              derive_seed(config.master_seed, SeedStream::kNoise, p,
                          static_cast<std::uint64_t>(c),
                          static_cast<std::uint64_t>(t)));

        for (int e = 0; e < n_enc; ++e) {
          bool used_adapted = false;
          const arma::cx_vec x = encode_symbols(
              states[static_cast<std::size_t>(e)], channel, s, &used_adapted);
          arma::cx_vec r = scale * (channel.entries * x);
          if (sigma_n2 > 0.0) r += noise;
          const arma::cx_vec decided = quantize_one_bit(r);
          for (int k = 0; k < users; ++k)
            if (decided(k) != s(k))
              ++totals.errors[static_cast<std::size_t>(e)]
                             [static_cast<std::size_t>(k)];
          if (used_adapted)
            ++totals.adapted_selected[static_cast<std::size_t>(e)];
        }
      }
      per_channel[static_cast<std::size_t>(c)] = std::move(totals);
    });

    point.encoders.resize(static_cast<std::size_t>(n_enc));
    for (int e = 0; e < n_enc; ++e) {
      EncoderPointResult& res = point.encoders[static_cast<std::size_t>(e)];
      res.encoder = config.encoders[static_cast<std::size_t>(e)];
      res.user_errors.assign(static_cast<std::size_t>(users), 0);
      res.trials_per_user = config.trials();
      for (const PointTotals& totals : per_channel) {
        for (int k = 0; k < users; ++k)
          res.user_errors[static_cast<std::size_t>(k)] +=
              totals.errors[static_cast<std::size_t>(e)]
                           [static_cast<std::size_t>(k)];
        res.adapted_selected +=
            totals.adapted_selected[static_cast<std::size_t>(e)];
      }
    }
    attach_analytics(config, p, point.rho0, sigma_n2, &point);
  }
  return curve;
}

ScatterCapture capture_scatter(int users, const std::vector<int>& antenna_list,
                               const arma::cx_vec& symbols, int channels,
                               double rho0, std::uint64_t master_seed) {
  if (static_cast<int>(symbols.n_elem) != users)
    throw InvalidArgument("capture_scatter: K != length of s");
  ScatterCapture capture;
  for (std::size_t mi = 0; mi < antenna_list.size(); ++mi) {
    const int m = antenna_list[mi];
    const double scale = std::sqrt(rho0 / m);
    for (int c = 0; c < channels; ++c) {
      const ChannelMatrix channel = generate_channel(
          users, m, GainProfile::equal(1.0),
          derive_seed(master_seed, SeedStream::kScatter, mi,
                      static_cast<std::uint64_t>(c)));
      const Precoder zf = zf_precoder(channel);
      const arma::cx_vec x = quantize_one_bit(zf.matrix * symbols);
      const arma::cx_vec received = scale * (channel.entries * x);
      for (int k = 0; k < users; ++k) {
        if (!std::isfinite(received(k).real()) ||
            !std::isfinite(received(k).imag()))
          throw NumericalDomain("capture_scatter: non-finite received value");
        capture.points.push_back({m, k, received(k), symbols(k)});
      }
    }
  }
  return capture;
}

std::vector<ScalingEstimate> estimate_scaling(
    int users, const std::vector<int>& antenna_grid, int channels,
    int symbols_per_channel, double rho0, const GainProfile& profile,
    std::uint64_t master_seed, int workers) {
  if (channels < 1 || symbols_per_channel < 1)
    throw InvalidArgument("estimate_scaling: need channels and symbols >= 1");
  std::vector<ScalingEstimate> estimates;
  estimates.reserve(antenna_grid.size());

  for (std::size_t mi = 0; mi < antenna_grid.size(); ++mi) {
    const int m = antenna_grid[mi];
    if (m <= users)
      throw InvalidArgument("estimate_scaling: grid must satisfy M > K");
    const double scale = std::sqrt(rho0 / m);

    // Per-channel partial sums, reduced in index order for bit-stable output.
    std::vector<double> num(static_cast<std::size_t>(channels), 0.0);
    std::vector<double> den(static_cast<std::size_t>(channels), 0.0);
    std::vector<std::vector<double>> gain_draws(
        static_cast<std::size_t>(channels));

    parallel_for(channels, workers, [&](int c) {
      const ChannelMatrix channel = generate_channel(
          users, m, profile,
          derive_seed(master_seed, SeedStream::kScaling, mi,
                      static_cast<std::uint64_t>(c)));
      const Precoder zf = zf_precoder(channel);
      double n_sum = 0.0;
      double d_sum = 0.0;
      for (int t = 0; t < symbols_per_channel; ++t) {
        const arma::cx_vec s = draw_symbols(
            users, derive_seed(master_seed, SeedStream::kSymbols, mi,
                               static_cast<std::uint64_t>(c),
                               static_cast<std::uint64_t>(t)));
        const arma::cx_vec x = quantize_one_bit(zf.matrix * s);
        const arma::cx_vec received = scale * (channel.entries * x);
        for (int k = 0; k < users; ++k) {
          n_sum += (received(k) * std::conj(s(k))).real();
          d_sum += std::norm(s(k));
        }
      }
      num[static_cast<std::size_t>(c)] = n_sum;
      den[static_cast<std::size_t>(c)] = d_sum;
      gain_draws[static_cast<std::size_t>(c)] = std::vector<double>(
          channel.gains.begin(), channel.gains.end());
    });

    double num_total = 0.0, den_total = 0.0;
    for (int c = 0; c < channels; ++c) {
      num_total += num[static_cast<std::size_t>(c)];
      den_total += den[static_cast<std::size_t>(c)];
    }
    const double regression_gain = num_total / den_total;
    // sqrt(2)*sigma_s maps the regression gain to the sqrt(2)/sigma_s * beta
    // convention.
    const double simulated =
        std::sqrt(2.0) * std::sqrt(kSymbolPower) * regression_gain;

    // Analytic value with the mean drawn gains (profile-exact for
    // equal/explicit profiles).
    std::vector<double> mean_gains(static_cast<std::size_t>(users), 0.0);
    for (int c = 0; c < channels; ++c)
      for (int k = 0; k < users; ++k)
        mean_gains[static_cast<std::size_t>(k)] +=
            gain_draws[static_cast<std::size_t>(c)]
                      [static_cast<std::size_t>(k)] / channels;
    const AsymptoticPrediction pred =
        asymptotic_scaling(m, users, mean_gains, rho0);

    estimates.push_back({m, simulated, pred.scale_factor});
  }
  return estimates;
}

}  // namespace obp
