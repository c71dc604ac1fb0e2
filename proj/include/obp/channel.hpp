// Random downlink channel generation: H = Diag(sigma_1..sigma_K) * Htilde,
// where Htilde has iid entries with independent standard-normal real and
// imaginary parts (E|h|^2 = 2, the Wishart convention Z = 2HH^H).
#ifndef OBP_CHANNEL_HPP
#define OBP_CHANNEL_HPP

#include <armadillo>
#include <cstdint>
#include <vector>

#include "obp/errors.hpp"

namespace obp {

// Per-user amplitude gain profile. The lognormal kind draws ln(sigma_i^2) ~
// Normal(mu_ln, sigma_ln^2) and defaults mu_ln = -sigma_ln^2/2 so that
// E[sigma_i^2] = 1.
struct GainProfile {
  enum class Kind { kEqual, kLognormal, kExplicit };

  static GainProfile equal(double sigma);
  static GainProfile lognormal(double sigma_ln);
  static GainProfile lognormal(double sigma_ln, double mu_ln);
  static GainProfile explicit_gains(std::vector<double> gains);

  Kind kind = Kind::kEqual;
  double sigma = 1.0;     // kEqual
  double sigma_ln = 0.0;  // kLognormal
  double mu_ln = 0.0;     // kLognormal
  std::vector<double> gains;  // kExplicit
};

struct ChannelMatrix {
  arma::cx_mat entries;  // K x M, rows already scaled by the gains
  arma::vec gains;       // length K, strictly positive

  int users() const { return static_cast<int>(entries.n_rows); }
  int antennas() const { return static_cast<int>(entries.n_cols); }
};

// Draws the K gain amplitudes sigma_i for a profile. Deterministic in seed.
std::vector<double> sample_gains(int users, const GainProfile& profile,
                                 std::uint64_t seed);

// Draws H = Diag(sigma) * Htilde. Requires 1 <= K <= M (ZF needs full row
// rank; K > M is rejected rather than pseudo-inverted). Identical inputs give
// bit-identical matrices. Gains use the same derived stream as sample_gains,
// so generate_channel(K, M, p, s).gains == sample_gains(K, p, s).
ChannelMatrix generate_channel(int users, int antennas,
                               const GainProfile& profile, std::uint64_t seed);

}  // namespace obp

#endif
