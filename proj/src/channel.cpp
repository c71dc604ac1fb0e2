#include "obp/channel.hpp"

#include <cmath>

#include "obp/rng.hpp"

namespace obp {

GainProfile GainProfile::equal(double sigma) {
  GainProfile p;
  p.kind = Kind::kEqual;
  p.sigma = sigma;
  return p;
}

GainProfile GainProfile::lognormal(double sigma_ln) {
  // mu_ln = -sigma_ln^2/2 makes E[sigma_i^2] = 1.
  return lognormal(sigma_ln, -0.5 * sigma_ln * sigma_ln);
}

GainProfile GainProfile::lognormal(double sigma_ln, double mu_ln) {
  GainProfile p;
  p.kind = Kind::kLognormal;
  p.sigma_ln = sigma_ln;
  p.mu_ln = mu_ln;
  return p;
}

GainProfile GainProfile::explicit_gains(std::vector<double> gains) {
  GainProfile p;
  p.kind = Kind::kExplicit;
  p.gains = std::move(gains);
  return p;
}

std::vector<double> sample_gains(int users, const GainProfile& profile,
                                 std::uint64_t seed) {
  if (users < 1) throw InvalidArgument("sample_gains: need at least one user");
  std::vector<double> out(static_cast<std::size_t>(users));
  switch (profile.kind) {
    case GainProfile::Kind::kEqual:
      if (!(profile.sigma > 0.0))
        throw InvalidArgument("equal gain profile needs sigma > 0");
      for (double& g : out) g = profile.sigma;
      break;
    case GainProfile::Kind::kLognormal: {
      if (profile.sigma_ln < 0.0)
        throw InvalidArgument("lognormal profile needs sigma_ln >= 0");
      Rng rng(derive_seed(seed, SeedStream::kGains));
      for (double& g : out) {
        // ln(sigma_i^2) ~ Normal(mu_ln, sigma_ln^2)
        const double log_power = profile.mu_ln + profile.sigma_ln * rng.gaussian();
        g = std::exp(0.5 * log_power);
      }
      break;
    }
    case GainProfile::Kind::kExplicit:
      if (profile.gains.size() != out.size())
        throw InvalidArgument("explicit gain profile has wrong length");
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(profile.gains[i] > 0.0))
          throw InvalidArgument("explicit gains must be strictly positive");
        out[i] = profile.gains[i];
      }
      break;
  }
  return out;
}

ChannelMatrix generate_channel(int users, int antennas,
                               const GainProfile& profile,
                               std::uint64_t seed) {
  if (users < 1) throw InvalidArgument("generate_channel: K must be >= 1");
  if (users > antennas)
    throw InvalidArgument("generate_channel: K > M has no full-row-rank ZF");

  const std::vector<double> gains = sample_gains(users, profile, seed);

  ChannelMatrix channel;
  channel.entries.set_size(users, antennas);
  channel.gains.set_size(users);

  // Fixed fill order (row by row, real part before imaginary part) is part
  // of the determinism contract.
  Rng rng(derive_seed(seed, SeedStream::kChannelEntries));
  for (int k = 0; k < users; ++k) {
    const double sigma_k = gains[static_cast<std::size_t>(k)];
    channel.gains(k) = sigma_k;
    for (int j = 0; j < antennas; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      channel.entries(k, j) = std::complex<double>(sigma_k * re, sigma_k * im);
    }
  }
  return channel;
}

}  // namespace obp
