#pragma once

#include <stdexcept>
#include <string>

namespace vqnhite {

// Metric solve attempted without regularization on a numerically singular matrix.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double smallest_eigenvalue)
      : std::runtime_error(what), smallest_eigenvalue_(smallest_eigenvalue) {}
  double smallest_eigenvalue() const { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

// Non-finite cost or state encountered during iterative optimization.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// A state collapsed to (numerically) zero norm where a unit vector was required.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a configured resource bound (e.g. dense-matrix qubit limit).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vqnhite
