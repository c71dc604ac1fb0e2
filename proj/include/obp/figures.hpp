// Experiment commands behind the CLI: each runs a configured experiment,
// writes one CSV artifact plus a JSON run manifest into the output
// directory, and returns the artifact paths. CSV bytes are deterministic for
// fixed arguments.
#ifndef OBP_FIGURES_HPP
#define OBP_FIGURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "obp/channel.hpp"
#include "obp/montecarlo.hpp"

namespace obp {

struct CommonArgs {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int workers = 0;        // 0: hardware concurrency
  std::uint64_t trials = 0;  // per point; 0 keeps the command default
};

struct RunManifest {
  std::string command;
  std::vector<std::string> artifacts;  // CSV paths
  std::string manifest_path;
};

// "equal:sigma", "lognormal:sigma_ln", or "file:path" (one amplitude gain
// per line).
GainProfile parse_gain_spec(const std::string& spec);

struct ScalingArgs {
  CommonArgs common;
  int users = 20;
  std::vector<int> ratio_grid;  // M/K values; default 2..50
  int channels = 500;
  int symbols_per_channel = 2;
  double rho0 = 1.0;
};
RunManifest cmd_fig_scaling(const ScalingArgs& args);

struct FloorArgs {
  CommonArgs common;
  std::vector<int> user_counts = {5, 20};
  std::vector<int> ratio_grid = {2, 3, 4, 5, 6, 8, 10};
  int channels = 5000;
  int symbols_per_channel = 20;
};
RunManifest cmd_fig_floor(const FloorArgs& args);

struct SerSweepArgs {
  CommonArgs common;
  int users = 20;
  int antennas = 200;
  GainProfile profile = GainProfile::equal(1.0);
  Encoder encoder = Encoder::kZeroForcing;
  std::vector<double> snr_db;  // default -10:2.5:20
  int channels = 2500;
  int symbols_per_channel = 40;
};
RunManifest cmd_fig_ser_sweep(const SerSweepArgs& args);

struct ZfVsMlArgs {
  CommonArgs common;
  int users = 2;
  int antennas = 10;
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25};
  int channels = 10000;
  int symbols_per_channel = 1;
};
RunManifest cmd_fig_zf_vs_ml(const ZfVsMlArgs& args);

struct ScatterArgs {
  CommonArgs common;
  int users = 4;
  std::vector<int> antenna_list = {20, 100, 300};
  int channels = 100;
  double rho0 = 1.0;
};
RunManifest cmd_fig_scatter(const ScatterArgs& args);

struct AdaptedArgs {
  CommonArgs common;
  int users = 3;
  std::vector<int> antenna_list = {9, 15};
  std::vector<double> snr_db = {0, 5, 10, 15, 20, 25, 30};
  int channels = 5000;
  int symbols_per_channel = 4;
};
RunManifest cmd_fig_adapted(const AdaptedArgs& args);

struct PredictArgs {
  CommonArgs common;
  int users = 20;
  std::vector<int> ratio_grid = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20};
  std::vector<double> snr_db = {0, 10, 20, 30};
  GainProfile profile = GainProfile::equal(1.0);
};
RunManifest cmd_predict(const PredictArgs& args);

}  // namespace obp

#endif
