// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace efm {

using Cplx = std::complex<double>;

/// Thrown when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation produced non-finite or inconsistent values
/// (e.g. a blow-up inside the time integrator, or a state whose point
/// values are no longer real to tolerance).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown on cache/file I/O failures that are not recoverable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Global cap on worker threads used by the internal parallel loops.
/// Defaults to 1; the CLI raises it from --threads. Thread-count changes
/// only affect floating-point reduction order within the documented
/// 1e-13 reproducibility envelope.
void set_max_threads(int count);
int max_threads();

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}
}  // namespace detail

}  // namespace efm
