#include "obp/precode.hpp"

#include <cmath>

#include "obp/quantize.hpp"

namespace obp {
namespace {

// Noiseless decode error count |{k : Q(H Q(Ps))_k != s_k}|.
int noiseless_errors(const ChannelMatrix& channel, const arma::cx_mat& precoder,
                     const arma::cx_vec& symbols) {
  const arma::cx_vec x = quantize_one_bit(precoder * symbols);
  const arma::cx_vec decoded = quantize_one_bit(channel.entries * x);
  int errors = 0;
  for (arma::uword k = 0; k < symbols.n_elem; ++k)
    if (decoded(k) != symbols(k)) ++errors;
  return errors;
}

}  // namespace

const char* to_string(PrecoderFamily family) {
  switch (family) {
    case PrecoderFamily::kZeroForcing: return "ZF";
    case PrecoderFamily::kMrt: return "MRT";
    case PrecoderFamily::kAdapted: return "ADAPTED";
  }
  return "?";
}

bool Precoder::full_column_rank() const {
  const arma::vec sv = arma::svd(matrix);
  if (sv.n_elem < matrix.n_cols) return false;
  return sv(sv.n_elem - 1) > 1e-10 * sv(0);
}

Precoder zf_precoder(const ChannelMatrix& channel) {
  const arma::cx_mat& h = channel.entries;
  arma::cx_mat gram_inv;
  if (!arma::inv_sympd(gram_inv, h * h.t()))
    throw SingularChannel("zf_precoder: H H^H is singular");
  Precoder p;
  p.matrix = h.t() * gram_inv;
  p.family = PrecoderFamily::kZeroForcing;
  return p;
}

Precoder mrt_precoder(const ChannelMatrix& channel) {
  const arma::cx_mat& h = channel.entries;
  Precoder p;
  p.matrix = h.t();
  for (arma::uword k = 0; k < p.matrix.n_cols; ++k) {
    const double n = arma::norm(p.matrix.col(k));
    if (!(n > 0.0)) throw DegenerateRow("mrt_precoder: zero channel row");
    p.matrix.col(k) /= n;
  }
  p.family = PrecoderFamily::kMrt;
  return p;
}

AdaptedDiagonal adapted_diagonal(const ChannelMatrix& channel) {
  const arma::cx_mat t = zf_precoder(channel).matrix;  // T = H^dagger, M x K
  arma::mat t_abs2(t.n_rows, t.n_cols);
  for (arma::uword k = 0; k < t.n_cols; ++k)
    for (arma::uword i = 0; i < t.n_rows; ++i)
      t_abs2(i, k) = std::norm(t(i, k));

  const arma::mat normal = t_abs2.t() * t_abs2;  // K x K
  const arma::vec rhs = t_abs2.t() * arma::ones<arma::vec>(t.n_rows);
  arma::vec d2;
  if (!arma::solve(d2, normal, rhs, arma::solve_opts::no_approx))
    throw DegenerateGeometry("adapted_diagonal: normal equations singular");

  AdaptedDiagonal result;
  result.d_squared = d2;
  result.residual =
      arma::norm(t_abs2 * d2 - arma::ones<arma::vec>(t.n_rows), 2);
  result.feasible = arma::all(d2 > 0.0);
  if (result.feasible) result.d = arma::sqrt(d2);
  return result;
}

Algorithm1Context::Algorithm1Context(const ChannelMatrix& channel)
    : channel_(channel), zf_(zf_precoder(channel)) {}

void Algorithm1Context::ensure_adapted() const {
  if (diagonal_.has_value()) return;
  diagonal_ = adapted_diagonal(channel_);
  if (diagonal_->feasible) {
    Precoder adapted;
    adapted.matrix = zf_.matrix;
    for (arma::uword k = 0; k < adapted.matrix.n_cols; ++k)
      adapted.matrix.col(k) *= diagonal_->d(k);
    adapted.family = PrecoderFamily::kAdapted;
    adapted_ = std::move(adapted);
  }
}

Algorithm1Result Algorithm1Context::select(const arma::cx_vec& symbols) const {
  Algorithm1Result result;
  const int zf_errors = noiseless_errors(channel_, zf_.matrix, symbols);
  result.zf_errors = zf_errors;
  if (zf_errors == 0) {
    result.precoder = zf_;
    result.precoded = zf_.matrix * symbols;
    result.selected_errors = 0;
    return result;
  }
  ensure_adapted();
  if (adapted_.has_value()) {
    const int adapted_errors =
        noiseless_errors(channel_, adapted_->matrix, symbols);
    // Strictly fewer errors switches to the adapted precoder; ties keep ZF.
    if (adapted_errors < zf_errors) {
      result.precoder = *adapted_;
      result.precoded = adapted_->matrix * symbols;
      result.selected_errors = adapted_errors;
      result.used_adapted = true;
      return result;
    }
  }
  result.precoder = zf_;
  result.precoded = zf_.matrix * symbols;
  result.selected_errors = zf_errors;
  return result;
}

Algorithm1Result algorithm1_select(const arma::cx_vec& symbols,
                                   const ChannelMatrix& channel) {
  return Algorithm1Context(channel).select(symbols);
}

}  // namespace obp
