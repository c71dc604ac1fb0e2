#include "obp/figures.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "obp/analysis.hpp"
#include "obp/csv.hpp"
#include "obp/version.hpp"

namespace obp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) { return CsvWriter::format(v); }

json gain_profile_json(const GainProfile& profile) {
  json j;
  switch (profile.kind) {
    case GainProfile::Kind::kEqual:
      j["kind"] = "equal";
      j["sigma"] = profile.sigma;
      break;
    case GainProfile::Kind::kLognormal:
      j["kind"] = "lognormal";
      j["sigma_ln"] = profile.sigma_ln;
      j["mu_ln"] = profile.mu_ln;
      break;
    case GainProfile::Kind::kExplicit:
      j["kind"] = "explicit";
      j["gains"] = profile.gains;
      break;
  }
  return j;
}

// One manifest per run; every CSV the run emitted is listed exactly once.
RunManifest write_manifest(const std::string& command, const CommonArgs& common,
                           const json& config,
                           const std::vector<std::string>& artifacts,
                           const std::string& started) {
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config;
  manifest["master_seed"] = common.seed;
  manifest["started_utc"] = started;
  manifest["finished_utc"] = iso_timestamp();
  manifest["artifacts"] = artifacts;
  manifest["version"] = kVersion;

  RunManifest result;
  result.command = command;
  result.artifacts = artifacts;
  result.manifest_path =
      (fs::path(common.out_dir) / (command + ".manifest.json")).string();
  std::ofstream out(result.manifest_path);
  if (!out)
    throw InvalidArgument("cannot write manifest: " + result.manifest_path);
  out << manifest.dump(2) << '\n';
  return result;
}

std::string csv_path(const CommonArgs& common, const std::string& name) {
  fs::create_directories(common.out_dir);
  return (fs::path(common.out_dir) / (name + ".csv")).string();
}

// --trials overrides the per-point channel count, keeping symbols/channel.
int channels_for(const CommonArgs& common, int default_channels,
                 int symbols_per_channel) {
  if (common.trials == 0) return default_channels;
  const std::uint64_t c =
      (common.trials + symbols_per_channel - 1) /
      static_cast<std::uint64_t>(symbols_per_channel);
  return static_cast<int>(std::max<std::uint64_t>(1, c));
}

}  // namespace

GainProfile parse_gain_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  if (kind == "equal")
    return GainProfile::equal(arg.empty() ? 1.0 : std::stod(arg));
  if (kind == "lognormal")
    return GainProfile::lognormal(arg.empty() ? 0.125 : std::stod(arg));
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw InvalidArgument("cannot read gain file: " + arg);
    std::vector<double> gains;
    double g;
    while (in >> g) gains.push_back(g);
    if (gains.empty()) throw InvalidArgument("gain file is empty: " + arg);
    return GainProfile::explicit_gains(std::move(gains));
  }
  throw InvalidArgument("unknown gain spec (want equal:s | lognormal:s | file:p): " +
                        spec);
}

RunManifest cmd_fig_scaling(const ScalingArgs& args) {
  const std::string started = iso_timestamp();
  std::vector<int> ratios = args.ratio_grid;
  if (ratios.empty())
    for (int r = 2; r <= 50; ++r) ratios.push_back(r);

  std::vector<int> antenna_grid;
  antenna_grid.reserve(ratios.size());
  for (int r : ratios) antenna_grid.push_back(r * args.users);

  const int channels =
      channels_for(args.common, args.channels, args.symbols_per_channel);
  const auto estimates = estimate_scaling(
      args.users, antenna_grid, channels, args.symbols_per_channel,
      args.rho0, GainProfile::equal(1.0), args.common.seed,
      args.common.workers);

  const std::string path = csv_path(args.common, "fig_scaling");
  CsvWriter csv(path, {"m_over_k", "simulated", "analytic", "ratio"});
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const ScalingEstimate& e = estimates[i];
    csv.row({fmt(static_cast<double>(e.antennas) / args.users),
             fmt(e.simulated), fmt(e.analytic),
             fmt(e.simulated / e.analytic)});
  }

  json config{{"k", args.users},
              {"ratio_grid", ratios},
              {"channels", channels},
              {"symbols_per_channel", args.symbols_per_channel},
              {"rho0", args.rho0},
              {"workers", args.common.workers}};
  return write_manifest("fig-scaling", args.common, config, {path}, started);
}

RunManifest cmd_fig_floor(const FloorArgs& args) {
  const std::string started = iso_timestamp();
  const int channels =
      channels_for(args.common, args.channels, args.symbols_per_channel);

  const std::string path = csv_path(args.common, "fig_floor");
  CsvWriter csv(path, {"k", "m", "m_over_k", "mc_ser", "analytic_floor",
                       "errors", "trials", "low_errors_warning"});

  for (int users : args.user_counts) {
    for (int ratio : args.ratio_grid) {
      ExperimentConfig config;
      config.users = users;
      config.antennas = ratio * users;
      config.profile = GainProfile::equal(1.0);
      config.encoders = {Encoder::kZeroForcing};
      config.noiseless = true;
      config.channels_per_point = channels;
      config.symbols_per_channel = args.symbols_per_channel;
      config.master_seed = args.common.seed;
      config.workers = args.common.workers;

      const SerCurve curve = estimate_ser(config);
      const EncoderPointResult& res = curve.points[0].encoders[0];
      const std::vector<double> gains(static_cast<std::size_t>(users), 1.0);
      const double floor =
          arma::mean(error_floor(config.antennas, users, gains));
      const std::uint64_t errors = res.total_errors();
      const std::uint64_t trials = res.trials_per_user * users;
      csv.row({fmt(users), fmt(config.antennas), fmt(ratio),
               fmt(res.pooled_ser()), fmt(floor),
               std::to_string(errors), std::to_string(trials),
               errors < 10 ? "1" : "0"});
    }
  }

  json config{{"user_counts", args.user_counts},
              {"ratio_grid", args.ratio_grid},
              {"channels", channels},
              {"symbols_per_channel", args.symbols_per_channel}};
  return write_manifest("fig-floor", args.common, config, {path}, started);
}

RunManifest cmd_fig_ser_sweep(const SerSweepArgs& args) {
  const std::string started = iso_timestamp();
  ExperimentConfig config;
  config.users = args.users;
  config.antennas = args.antennas;
  config.profile = args.profile;
  config.encoders = {args.encoder};
  config.snr_db = args.snr_db;
  if (config.snr_db.empty())
    for (double db = -10.0; db <= 20.0 + 1e-9; db += 2.5)
      config.snr_db.push_back(db);
  config.channels_per_point =
      channels_for(args.common, args.channels, args.symbols_per_channel);
  config.symbols_per_channel = args.symbols_per_channel;
  config.master_seed = args.common.seed;
  config.workers = args.common.workers;

  const SerCurve curve = estimate_ser(config);

  const std::string path = csv_path(args.common, "fig_ser_sweep");
  CsvWriter csv(path, {"snr_db", "errors", "trials", "mc_ser", "ci_lower",
                       "ci_upper", "analytic_finite", "analytic_asymptotic"});
  for (const SerPoint& point : curve.points) {
    const EncoderPointResult& res = point.encoders[0];
    const BinomialCi ci = res.pooled_ci();
    csv.row({fmt(point.snr_db), std::to_string(res.total_errors()),
             std::to_string(res.trials_per_user * config.users),
             fmt(res.pooled_ser()), fmt(ci.lower), fmt(ci.upper),
             fmt(point.analytic_finite), fmt(point.analytic_asymptotic)});
  }

  json config_json{{"k", args.users},
                   {"m", args.antennas},
                   {"gains", gain_profile_json(args.profile)},
                   {"encoder", to_string(args.encoder)},
                   {"snr_db", config.snr_db},
                   {"channels", config.channels_per_point},
                   {"symbols_per_channel", config.symbols_per_channel}};
  return write_manifest("fig-ser-sweep", args.common, config_json, {path},
                        started);
}

RunManifest cmd_fig_zf_vs_ml(const ZfVsMlArgs& args) {
  const std::string started = iso_timestamp();
  ExperimentConfig config;
  config.users = args.users;
  config.antennas = args.antennas;
  config.profile = GainProfile::equal(1.0);
  config.encoders = {Encoder::kZeroForcing, Encoder::kMaximumLikelihood};
  config.snr_db = args.snr_db;
  config.channels_per_point =
      channels_for(args.common, args.channels, args.symbols_per_channel);
  config.symbols_per_channel = args.symbols_per_channel;
  config.master_seed = args.common.seed;
  config.workers = args.common.workers;

  const SerCurve curve = estimate_ser(config);

  const std::string path = csv_path(args.common, "fig_zf_vs_ml");
  CsvWriter csv(path, {"snr_db", "ser_zf", "ser_ml"});
  for (const SerPoint& point : curve.points)
    csv.row({fmt(point.snr_db), fmt(point.encoders[0].pooled_ser()),
             fmt(point.encoders[1].pooled_ser())});

  json config_json{{"k", args.users},
                   {"m", args.antennas},
                   {"snr_db", args.snr_db},
                   {"channels", config.channels_per_point},
                   {"symbols_per_channel", config.symbols_per_channel}};
  return write_manifest("fig-zf-vs-ml", args.common, config_json, {path},
                        started);
}

RunManifest cmd_fig_scatter(const ScatterArgs& args) {
  const std::string started = iso_timestamp();
  // One trial is one channel realization here.
  const int channels = args.common.trials == 0
                           ? args.channels
                           : static_cast<int>(args.common.trials);
  arma::cx_vec s(args.users);
  // Fig. 6 pattern: user k gets the k-th constellation point, cycling.
  const std::complex<double> constellation[4] = {
      {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (int k = 0; k < args.users; ++k) s(k) = constellation[k % 4];

  const ScatterCapture capture =
      capture_scatter(args.users, args.antenna_list, s, channels,
                      args.rho0, args.common.seed);

  const std::string path = csv_path(args.common, "fig_scatter");
  CsvWriter csv(path, {"m", "user", "re", "im", "intended_re", "intended_im"});
  for (const ScatterCapture::Point& point : capture.points)
    csv.row({std::to_string(point.antennas), std::to_string(point.user),
             fmt(point.received.real()), fmt(point.received.imag()),
             fmt(point.intended.real()), fmt(point.intended.imag())});

  json config{{"k", args.users},
              {"m_list", args.antenna_list},
              {"channels", channels},
              {"rho0", args.rho0}};
  return write_manifest("fig-scatter", args.common, config, {path}, started);
}

RunManifest cmd_fig_adapted(const AdaptedArgs& args) {
  const std::string started = iso_timestamp();
  const std::string path = csv_path(args.common, "fig_adapted");
  CsvWriter csv(path, {"k", "m", "snr_db", "ser_zf", "ser_alg1",
                       "alg1_selection_rate"});

  for (int antennas : args.antenna_list) {
    ExperimentConfig config;
    config.users = args.users;
    config.antennas = antennas;
    config.profile = GainProfile::equal(1.0);
    config.encoders = {Encoder::kZeroForcing, Encoder::kAdaptedAlg1};
    config.snr_db = args.snr_db;
    config.channels_per_point =
        channels_for(args.common, args.channels, args.symbols_per_channel);
    config.symbols_per_channel = args.symbols_per_channel;
    config.master_seed = args.common.seed;
    config.workers = args.common.workers;

    const SerCurve curve = estimate_ser(config);
    for (const SerPoint& point : curve.points) {
      const EncoderPointResult& alg1 = point.encoders[1];
      const double selection_rate =
          static_cast<double>(alg1.adapted_selected) / config.trials();
      csv.row({std::to_string(args.users), std::to_string(antennas),
               fmt(point.snr_db), fmt(point.encoders[0].pooled_ser()),
               fmt(alg1.pooled_ser()), fmt(selection_rate)});
    }
  }

  json config{{"k", args.users},
              {"m_list", args.antenna_list},
              {"snr_db", args.snr_db},
              {"channels", channels_for(args.common, args.channels,
                                        args.symbols_per_channel)},
              {"symbols_per_channel", args.symbols_per_channel}};
  return write_manifest("fig-adapted", args.common, config, {path}, started);
}

RunManifest cmd_predict(const PredictArgs& args) {
  const std::string started = iso_timestamp();
  const std::string path = csv_path(args.common, "predict");
  CsvWriter csv(path, {"k", "m", "m_over_k", "snr_db", "rho0",
                       "asymptotic_sqinr", "ser_prediction", "floor"});

  const std::vector<double> gains =
      sample_gains(args.users, args.profile, args.common.seed);
  for (int ratio : args.ratio_grid) {
    const int antennas = ratio * args.users;
    const arma::vec floor = error_floor(antennas, args.users, gains);
    for (double snr_db : args.snr_db) {
      const double rho0 = std::pow(10.0, snr_db / 10.0);
      const arma::vec sq =
          asymptotic_sqinr(antennas, args.users, gains, rho0, 1.0);
      double mean_ser = 0.0;
      for (double v : sq) mean_ser += ser_from_sqinr(v);
      mean_ser /= args.users;
      csv.row({std::to_string(args.users), std::to_string(antennas),
               fmt(ratio), fmt(snr_db), fmt(rho0), fmt(arma::mean(sq)),
               fmt(mean_ser), fmt(arma::mean(floor))});
    }
  }

  json config{{"k", args.users},
              {"ratio_grid", args.ratio_grid},
              {"snr_db", args.snr_db},
              {"gains", gain_profile_json(args.profile)}};
  return write_manifest("predict", args.common, config, {path}, started);
}

}  // namespace obp
