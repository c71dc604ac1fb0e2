// Deterministic random number generation.
//
// Every stochastic quantity in the library is a pure function of a 64-bit
// seed. Seeds for individual work units (channel realizations, symbol draws,
// noise draws) are derived from a master seed and integer indices with a
// splitmix64-based mixer, so results are bit-identical across runs and across
// worker counts. Gaussian variates use a fixed Box-Muller transform on top of
// std::mt19937_64; the draw sequence is part of the reproducibility contract
// of this implementation (other implementations need only match in
// distribution).
#ifndef OBP_RNG_HPP
#define OBP_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace obp {

// splitmix64 finalizer (Stafford mix13); bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Named streams keep the draws for different purposes statistically
// independent even when they share index tuples.
enum class SeedStream : std::uint64_t {
  kChannelEntries = 1,
  kGains = 2,
  kSymbols = 3,
  kNoise = 4,
  kScatter = 5,
  kScaling = 6,
};

// Absorbs (stream, i0, i1, i2) into the master seed one word at a time.
// Deterministic and collision-free within an experiment for distinct index
// tuples (the mixer is a bijection per absorbed word); not cryptographic.
inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                 std::uint64_t i0 = 0, std::uint64_t i1 = 0,
                                 std::uint64_t i2 = 0) {
  std::uint64_t h = master;
  const std::uint64_t words[4] = {static_cast<std::uint64_t>(stream), i0, i1, i2};
  for (std::uint64_t w : words) {
    h = mix64(h + 0x9E3779B97F4A7C15ULL + w);
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached, so draws come in a fixed documented order.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));  // 1-u1 in (0,1]
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Proper complex Gaussian with E|z|^2 = total_variance (real and imaginary
  // parts independent, each of variance total_variance/2). Real part drawn
  // first.
  std::complex<double> complex_gaussian(double total_variance) {
    const double s = std::sqrt(0.5 * total_variance);
    const double re = gaussian();
    const double im = gaussian();
    return {s * re, s * im};
  }

  // QPSK symbol in {1+j, 1-j, -1+j, -1-j}: bit 0 of one u64 selects the real
  // sign, bit 1 the imaginary sign.
  std::complex<double> qpsk() {
    const std::uint64_t u = next_u64();
    return {(u & 1) ? 1.0 : -1.0, (u & 2) ? 1.0 : -1.0};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace obp

#endif
