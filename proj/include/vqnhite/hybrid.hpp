#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "vqnhite/ansatz.hpp"
#include "vqnhite/neural.hpp"
#include "vqnhite/pauli.hpp"
#include "vqnhite/statevector.hpp"
#include "vqnhite/trace.hpp"
#include "vqnhite/vite.hpp"

namespace vqnhite {

// Combined circuit and network parameters. Flattened layout is [theta | phi]
// with phi in the network's layer-major order; all block matrices and the
// joint Euler update share this ordering.
struct HybridParams {
  std::vector<double> theta;
  MlpParams nn;

  std::size_t size() const { return theta.size() + nn.n_params(); }
  std::vector<double> flatten() const;
  void set_from_flat(std::span<const double> flat);
};

// Unnormalized f(phi) U(theta) |0bar> together with its normalization.
struct HybridState {
  StateVector raw;
  double norm_const = 1.0;  // 1 / sqrt(<raw|raw>)

  StateVector normalized() const;
};

// Half-gradients of <phi~|phi~> with respect to each parameter block.
struct DVector {
  Eigen::VectorXd theta;
  Eigen::VectorXd phi;

  Eigen::VectorXd flat() const;
};

HybridState build_hybrid_state(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                               const MlpParams& nn, const StateVector& input);

DVector compute_D(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                  const MlpParams& nn, const StateVector& input);

// 1 - |<target|Phi>|^2 for a normalized target.
double cost_F(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
              const MlpParams& nn, const StateVector& input, const StateVector& target);

// Gradient of cost_F over [theta | phi].
Eigen::VectorXd cost_gradients(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                               const MlpParams& nn, const StateVector& input,
                               const StateVector& target);

struct InitResult {
  HybridParams params;
  std::vector<double> cost_history;  // iters + 1 values, initial cost first
};

// Plain gradient descent x <- x - eta * grad(cost_F), exactly `iters` steps.
InitResult init_optimize(const AnsatzCircuit& ansatz, HybridParams start,
                         const StateVector& input, const StateVector& target, int iters,
                         double eta);

// Symmetric Gram matrix Re <d_a Phi | d_b Phi> over [theta | phi].
Eigen::MatrixXd hybrid_metric(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                              const MlpParams& nn, const StateVector& input);

// Force vector -Re <d_a Phi | H | Phi> over [theta | phi].
Eigen::VectorXd hybrid_force(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                             const MlpParams& nn, const StateVector& input, const PauliSum& h);

// <Phi| H |Phi> = sum_j h_j <phi~|P_j|phi~> / <phi~|phi~>.
double expectation_energy(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const MlpParams& nn, const StateVector& input, const PauliSum& h);

struct VqnhiteOptions {
  int init_iters = 50;
  double lr = 0.1;
  enum class InitTarget { ExactIte, TaylorPauli };
  InitTarget init_target = InitTarget::ExactIte;
  int taylor_order = 2;
  // Invoked after every recorded beta with the current parameters when set.
  std::function<void(double, const HybridParams&)> snapshot_sink;
};

// Two-stage evolution: gradient-descent initialization of {theta, phi}
// against the beta = dbeta target, then joint Euler steps of the flattened
// parameter vector under the hybrid metric and force.
FidelityTrace vqnhite_evolve(const EvolutionConfig& config, const AnsatzCircuit& ansatz,
                             const PauliSum& h, const StateVector& psi0, std::uint64_t seed,
                             const VqnhiteOptions& options = {});

}  // namespace vqnhite
