#pragma once

#include <stdexcept>
#include <string>

namespace rmusic {

// Thrown when matrix shapes or sketch-size orderings do not conform.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown on out-of-range scalar arguments (angles, widths, counts).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative or direct factorization cannot deliver the
// requested accuracy (non-convergence, non-finite input).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a least-squares block is singular to working precision.
struct RankDeficiencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a basis handed to a spectrum routine is not orthonormal.
struct OrthonormalityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown by the config parser; carries the 1-based line number.
struct ConfigError : std::runtime_error {
  int line = 0;
  ConfigError(const std::string& msg, int line_no)
      : std::runtime_error(msg), line(line_no) {}
};

}  // namespace rmusic
