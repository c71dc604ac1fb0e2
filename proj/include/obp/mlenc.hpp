// Exhaustive maximum-likelihood encoder over the QPSK transmit alphabet:
// x = argmin_{v in S^M} || s - H v ||^2, S = {1+j, 1-j, -1+j, -1-j}.
//
// Candidates are visited in base-4 reflected Gray order with the symbol cycle
// (1+j, 1-j, -1-j, -1+j), so successive candidates differ in one antenna by a
// single +-2 step along one axis and H v is maintained by a rank-1 update.
// Ties at exactly equal objectives are broken toward the lexicographically
// smaller candidate (digits in the cycle order, antenna 0 most significant),
// so any partition of the candidate space reduces to the serial result.
#ifndef OBP_MLENC_HPP
#define OBP_MLENC_HPP

#include <armadillo>
#include <cstdint>

#include "obp/channel.hpp"
#include "obp/errors.hpp"

namespace obp {

inline constexpr int kMlMaxAntennas = 12;

struct MlResult {
  arma::cx_vec x;                         // the minimizer, QPSK entries
  double objective = 0.0;                 // || s - H x ||^2, recomputed exactly
  std::uint64_t candidates_evaluated = 0; // always 4^M
};

// Throws CapacityError when M exceeds max_antennas (default 12, i.e. at most
// 4^12 candidates).
MlResult ml_encode(const arma::cx_vec& symbols, const ChannelMatrix& channel,
                   int max_antennas = kMlMaxAntennas);

}  // namespace obp

#endif
