#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vqnhite/statevector.hpp"

namespace vqnhite {

// Fully connected network s -> f(s) defining the diagonal operator
// f_hat = sum_s f(s) |s><s|. Widths are [n, n, n/2, 1]; hidden layers use
// tanh, the scalar output feeds an exponential, so f > 0 always and the
// operator reduces to the identity when the last layer is zero.
//
// Input bits enter as 2b - 1 in {-1, +1}.
class MlpParams {
 public:
  struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> weights;  // row-major, out x in
    std::vector<double> biases;   // out
  };

  MlpParams() = default;

  // All layers zero: f(s) = 1 for every s.
  static MlpParams zeros(int n_qubits);

  // Hidden layers i.i.d. uniform on [-1/sqrt(fan_in), +1/sqrt(fan_in)],
  // final layer exactly zero; deterministic per seed.
  static MlpParams random_init(std::uint64_t seed, int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& layers() { return layers_; }
  std::size_t n_params() const;

  // Flat record in layer-major order: W1, b1, W2, b2, W3, b3.
  std::vector<double> to_flat() const;
  static MlpParams from_flat(int n_qubits, std::span<const double> flat);

 private:
  int n_qubits_ = 0;
  std::vector<Layer> layers_;
};

double nn_forward(const MlpParams& params, std::uint64_t bits);

// d f(s) / d params, flattened in the same order as MlpParams::to_flat.
std::vector<double> nn_gradient(const MlpParams& params, std::uint64_t bits);

// Forward value and gradient in one pass.
double nn_value_and_gradient(const MlpParams& params, std::uint64_t bits,
                             std::vector<double>& gradient);

// f_hat |psi>: amplitude at s scaled by f(s). Output generally unnormalized.
StateVector apply_f(const MlpParams& params, const StateVector& psi);

// Cached f(s) over all bitstrings of the parameter's qubit count.
std::vector<double> nn_forward_all(const MlpParams& params);

}  // namespace vqnhite
