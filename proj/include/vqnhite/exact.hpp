#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "vqnhite/pauli.hpp"
#include "vqnhite/statevector.hpp"

namespace vqnhite {

// Eigendecomposition H = V diag(lambda) V^dagger with ascending eigenvalues.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // columns
};

SpectralDecomposition diagonalize(const PauliSum& h, int dense_limit = kDefaultDenseLimit);

// Normalized exp(-H beta) |psi0>. The smallest retained exponent is factored
// out before exponentiating so that beta * ||H|| does not overflow.
StateVector exact_ite(const SpectralDecomposition& spectral, const StateVector& psi0,
                      double beta);
StateVector exact_ite(const PauliSum& h, const StateVector& psi0, double beta);

// |<a|b>|^2 for normalized states; rejects inputs whose norm deviates from 1
// by more than 1e-6.
double fidelity(const StateVector& a, const StateVector& b);

// Central finite differences, O(h^2) truncation.
std::vector<double> finite_diff_gradient(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h);

// Jacobian of a vector-valued map; column j holds d fn / d x_j.
Eigen::MatrixXcd finite_diff_jacobian(
    const std::function<Eigen::VectorXcd(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h);

Eigen::VectorXcd state_as_vector(const StateVector& psi);
StateVector vector_as_state(const Eigen::VectorXcd& v, int n_qubits);

}  // namespace vqnhite
