// Linear precoder constructions: zero-forcing, maximal-ratio transmission,
// the adapted diagonal correction D solving diag(T D^2 T^H) = I_M in least
// squares, and the per-symbol selection rule between ZF and the adapted
// precoder H^dagger D.
#ifndef OBP_PRECODE_HPP
#define OBP_PRECODE_HPP

#include <armadillo>
#include <optional>

#include "obp/channel.hpp"
#include "obp/errors.hpp"

namespace obp {

enum class PrecoderFamily { kZeroForcing, kMrt, kAdapted };

const char* to_string(PrecoderFamily family);

struct Precoder {
  arma::cx_mat matrix;  // M x K, full column rank
  PrecoderFamily family = PrecoderFamily::kZeroForcing;

  // Smallest/largest singular value ratio must exceed 1e-10.
  bool full_column_rank() const;
};

// P = H^H (H H^H)^{-1}; satisfies H P = I_K. Throws SingularChannel when the
// Gram matrix cannot be inverted.
Precoder zf_precoder(const ChannelMatrix& channel);

// P = H^H with unit-norm columns. Throws DegenerateRow on a zero channel row.
Precoder mrt_precoder(const ChannelMatrix& channel);

struct AdaptedDiagonal {
  arma::vec d_squared;  // least-squares solution, may contain non-positives
  arma::vec d;          // sqrt(d_squared); filled only when feasible
  double residual = 0.0;  // || Ttilde d^2 - 1_M ||_2 at the solution
  bool feasible = false;  // all d_squared > 0
};

// Solves min || Ttilde d^2 - 1_M ||_2 by the normal equations, where
// T = H^dagger and Ttilde_ik = |t_ik|^2. Throws DegenerateGeometry when
// Ttilde^T Ttilde is singular.
AdaptedDiagonal adapted_diagonal(const ChannelMatrix& channel);

struct Algorithm1Result {
  Precoder precoder;          // the selected precoder
  arma::cx_vec precoded;      // P s for the selected P (before quantization)
  int zf_errors = 0;          // noiseless decode errors of plain ZF
  int selected_errors = 0;    // noiseless decode errors of the selection
  bool used_adapted = false;
};

// Per-channel state for the selection rule; the ZF precoder is built once
// and the adapted diagonal lazily, on the first symbol vector that ZF fails
// to decode noiselessly.
class Algorithm1Context {
 public:
  explicit Algorithm1Context(const ChannelMatrix& channel);

  Algorithm1Result select(const arma::cx_vec& symbols) const;

  const Precoder& zf() const { return zf_; }

 private:
  const ChannelMatrix& channel_;
  Precoder zf_;
  // Lazily built; disengaged until needed, nullopt-wrapped empty when the
  // least-squares d^2 is infeasible (fall back to ZF).
  mutable std::optional<AdaptedDiagonal> diagonal_;
  mutable std::optional<Precoder> adapted_;
  void ensure_adapted() const;
};

// Selection rule on one (s, H) pair: keep ZF when it decodes s noiselessly;
// otherwise pick whichever of {ZF, H^dagger D} gives strictly fewer noiseless
// decode errors, ties and infeasible D falling back to ZF.
Algorithm1Result algorithm1_select(const arma::cx_vec& symbols,
                                   const ChannelMatrix& channel);

}  // namespace obp

#endif
