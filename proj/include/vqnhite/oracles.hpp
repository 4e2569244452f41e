#pragma once

#include <Eigen/Dense>

#include "vqnhite/ansatz.hpp"
#include "vqnhite/hybrid.hpp"
#include "vqnhite/neural.hpp"
#include "vqnhite/pauli.hpp"
#include "vqnhite/statevector.hpp"

namespace vqnhite {

// Finite-difference oracles over the hybrid parametrization [theta | phi].
// These differentiate the state maps numerically and never touch the
// analytic metric/force/gradient assembly they are used to check.

// Jacobian of the normalized state |Phi(x)>; column a is d|Phi>/dx_a.
Eigen::MatrixXcd fd_normalized_state_jacobian(const AnsatzCircuit& ansatz,
                                              const HybridParams& params,
                                              const StateVector& input, double h);

// Gram matrix Re <d_a Phi | d_b Phi> from the numerical Jacobian.
Eigen::MatrixXd fd_metric_oracle(const AnsatzCircuit& ansatz, const HybridParams& params,
                                 const StateVector& input, double h);

// Gradient of E(x) = <Phi|H|Phi> with H applied densely.
Eigen::VectorXd fd_energy_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                   const StateVector& input, const PauliSum& hamiltonian,
                                   double h);

// Gradient of the squared norm <phi~|phi~>.
Eigen::VectorXd fd_norm_sq_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                    const StateVector& input, double h);

// Gradient of cost_F at the given parameters.
Eigen::VectorXd fd_cost_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                 const StateVector& input, const StateVector& target,
                                 double h);

// Circuit-only versions over theta (the baseline parametrization).
Eigen::MatrixXd fd_circuit_metric(const AnsatzCircuit& ansatz,
                                  const std::vector<double>& theta, const StateVector& input,
                                  double h);
Eigen::VectorXd fd_circuit_force(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                                 const StateVector& input, const PauliSum& hamiltonian,
                                 double h);

// Kronecker-product construction of a Pauli-string matrix, assembled
// independently of pauli_apply.
Eigen::MatrixXcd kron_pauli_matrix(const PauliString& p);
Eigen::MatrixXcd kron_sum_matrix(const PauliSum& a);

}  // namespace vqnhite
