// Error types shared across the library. The CLI maps these to exit codes
// (invalid arguments -> 2, capacity -> 3).
#ifndef OBP_ERRORS_HPP
#define OBP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace obp {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A precoder row with zero power; the Bussgang normalization is undefined.
struct DegenerateRow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A correlation component left the arcsine domain beyond numerical slack.
struct NumericalDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Normal equations of the adapted diagonal are singular.
struct DegenerateGeometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Guard against runaway exhaustive searches (4^M candidates).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace obp

#endif
