#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace primstab {

// Caller supplied input that violates a documented precondition.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A construction that is guaranteed to succeed did not; indicates a bug.
struct InternalViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct NotLoxodromic : std::domain_error {
  NotLoxodromic(const std::string& what, std::complex<double> tr)
      : std::domain_error(what), trace(tr) {}
  std::complex<double> trace;
};

}  // namespace primstab
