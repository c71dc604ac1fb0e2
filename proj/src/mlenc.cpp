#include "obp/mlenc.hpp"

#include <vector>

namespace obp {
namespace {

// Symbol cycle chosen so that a +-1 digit step is a single +-2 move along one
// axis: 0:1+j -> 1:1-j -> 2:-1-j -> 3:-1+j.
const std::complex<double> kCycle[4] = {
    {1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}, {-1.0, 1.0}};

}  // namespace

MlResult ml_encode(const arma::cx_vec& symbols, const ChannelMatrix& channel,
                   int max_antennas) {
  const int m = channel.antennas();
  const int k = channel.users();
  if (m > max_antennas)
    throw CapacityError("ml_encode: exhaustive search capped at 4^" +
                        std::to_string(max_antennas) + " candidates");
  if (static_cast<int>(symbols.n_elem) != k)
    throw InvalidArgument("ml_encode: symbol vector length != K");

  // Channel columns split into components and pre-scaled by 2, so a
  // digit step is a plain axpy with coefficient +-1 folded into `step`.
  std::vector<double> col2_re(static_cast<std::size_t>(m) * k);
  std::vector<double> col2_im(static_cast<std::size_t>(m) * k);
  for (int j = 0; j < m; ++j) {
    for (int r = 0; r < k; ++r) {
      col2_re[static_cast<std::size_t>(j) * k + r] =
          2.0 * channel.entries(r, j).real();
      col2_im[static_cast<std::size_t>(j) * k + r] =
          2.0 * channel.entries(r, j).imag();
    }
  }

  // y = H v for the all-(1+j) start candidate.
  std::vector<double> y_re(static_cast<std::size_t>(k), 0.0);
  std::vector<double> y_im(static_cast<std::size_t>(k), 0.0);
  std::vector<double> s_re(static_cast<std::size_t>(k));
  std::vector<double> s_im(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) {
    s_re[static_cast<std::size_t>(r)] = symbols(r).real();
    s_im[static_cast<std::size_t>(r)] = symbols(r).imag();
  }
  for (int j = 0; j < m; ++j) {
    for (int r = 0; r < k; ++r) {
      // (a+bj)(1+j) = (a-b) + (a+b)j with (a, b) = channel entry.
      const double a = channel.entries(r, j).real();
      const double b = channel.entries(r, j).imag();
      y_re[static_cast<std::size_t>(r)] += a - b;
      y_im[static_cast<std::size_t>(r)] += a + b;
    }
  }

  // Loopless reflected Gray enumeration state (mixed radix 4).
  std::vector<int> digit(static_cast<std::size_t>(m), 0);
  std::vector<int> dir(static_cast<std::size_t>(m), 1);
  std::vector<int> focus(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) focus[static_cast<std::size_t>(j)] = j;

  std::vector<int> best_digits = digit;
  double best_obj = 0.0;
  for (int r = 0; r < k; ++r) {
    const double dr = s_re[static_cast<std::size_t>(r)] -
                      y_re[static_cast<std::size_t>(r)];
    const double di = s_im[static_cast<std::size_t>(r)] -
                      y_im[static_cast<std::size_t>(r)];
    best_obj += dr * dr + di * di;
  }

  std::uint64_t visited = 1;

  while (true) {
    const int j = focus[0];
    focus[0] = 0;
    if (j == m) break;
    const int old_digit = digit[static_cast<std::size_t>(j)];
    const int new_digit = old_digit + dir[static_cast<std::size_t>(j)];
    digit[static_cast<std::size_t>(j)] = new_digit;
    if (new_digit == 0 || new_digit == 3) {
      dir[static_cast<std::size_t>(j)] = -dir[static_cast<std::size_t>(j)];
      focus[static_cast<std::size_t>(j)] = focus[static_cast<std::size_t>(j) + 1];
      focus[static_cast<std::size_t>(j) + 1] = j + 1;
    }

    // Transition between adjacent cycle digits p and p+1 moves along the
    // imaginary axis for p in {0, 2} and the real axis for p = 1.
    const int low = old_digit < new_digit ? old_digit : new_digit;
    const bool forward = new_digit > old_digit;
    const double* cr = &col2_re[static_cast<std::size_t>(j) * k];
    const double* ci = &col2_im[static_cast<std::size_t>(j) * k];
    double obj = 0.0;
    if (low == 1) {  // real-axis step: delta = -2 forward, +2 backward
      const double step = forward ? -1.0 : 1.0;
      for (int r = 0; r < k; ++r) {
        y_re[static_cast<std::size_t>(r)] += step * cr[r];
        y_im[static_cast<std::size_t>(r)] += step * ci[r];
        const double dr = s_re[static_cast<std::size_t>(r)] -
                          y_re[static_cast<std::size_t>(r)];
        const double di = s_im[static_cast<std::size_t>(r)] -
                          y_im[static_cast<std::size_t>(r)];
        obj += dr * dr + di * di;
      }
    } else {  // imaginary-axis step; sign flips between the two Im edges
      const double step = (low == 0) == forward ? -1.0 : 1.0;
      for (int r = 0; r < k; ++r) {
        y_re[static_cast<std::size_t>(r)] -= step * ci[r];
        y_im[static_cast<std::size_t>(r)] += step * cr[r];
        const double dr = s_re[static_cast<std::size_t>(r)] -
                          y_re[static_cast<std::size_t>(r)];
        const double di = s_im[static_cast<std::size_t>(r)] -
                          y_im[static_cast<std::size_t>(r)];
        obj += dr * dr + di * di;
      }
    }
    ++visited;

    if (obj < best_obj) {
      best_obj = obj;
      best_digits = digit;
    } else if (obj == best_obj && digit < best_digits) {
      best_digits = digit;
    }
  }

  MlResult result;
  result.candidates_evaluated = visited;
  result.x.set_size(m);
  for (int j = 0; j < m; ++j)
    result.x(j) = kCycle[best_digits[static_cast<std::size_t>(j)]];
  // Exact objective for the minimizer, free of incremental rounding drift.
  result.objective =
      std::pow(arma::norm(symbols - channel.entries * result.x, 2), 2);
  return result;
}

}  // namespace obp
