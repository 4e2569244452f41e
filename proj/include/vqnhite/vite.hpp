#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vqnhite/ansatz.hpp"
#include "vqnhite/pauli.hpp"
#include "vqnhite/statevector.hpp"
#include "vqnhite/trace.hpp"

namespace vqnhite {

enum class ExpectationMode { Exact, Hadamard };

struct LinearSystem {
  Eigen::MatrixXd m;
  Eigen::VectorXd c;
};

struct EvolutionConfig {
  double dbeta = 0.1;
  double beta_max = 6.0;
  // Near-singular metrics amplify force components on eigenvalues near the
  // ridge; 1e-6 lets occasional n = 6 trajectories blow up, 1e-5 does not.
  double ridge = 1e-5;
  ExpectationMode mode = ExpectationMode::Exact;
  int shots = 0;          // 0 = exact expectations in hadamard mode
  std::uint64_t seed = 0; // shot-noise stream

  void validate() const;
  int n_steps() const;
};

// Metric M_{j,k} = Re <d_j phi | d_k phi> from assembled derivative states.
Eigen::MatrixXd compute_M(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const StateVector& input);

// Same matrix from the expanded form: sums of Re(a*_{j,p} a_{k,q} <U_{j,p} | U_{k,q}>)
// over inserted-generator circuit states. Independent code path used for
// cross-checks and mirrored by the ancilla-circuit estimator.
Eigen::MatrixXd compute_M_sandwich(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta,
                                   const StateVector& input);

Eigen::MatrixXd compute_M_hadamard(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta,
                                   const StateVector& input, int shots, std::uint64_t seed);

// Force C_j = -Re <phi(theta)| H |d_j phi(theta)>.
Eigen::VectorXd compute_C(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const PauliSum& h, const StateVector& input);

Eigen::VectorXd compute_C_hadamard(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta, const PauliSum& h,
                                   const StateVector& input, int shots, std::uint64_t seed);

// Euler update (M + ridge I)^{-1} C * dbeta. With ridge = 0 a numerically
// singular M raises SingularSystemError carrying the smallest eigenvalue.
Eigen::VectorXd solve_update(const LinearSystem& system, double dbeta, double ridge);

// Baseline variational evolution from theta = 0, recording fidelity against
// the exact trajectory and circuit energy at each beta step.
FidelityTrace vite_evolve(const EvolutionConfig& config, const AnsatzCircuit& ansatz,
                          const PauliSum& h, const StateVector& psi0);

}  // namespace vqnhite
