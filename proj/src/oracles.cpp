#include "vqnhite/oracles.hpp"

#include "vqnhite/exact.hpp"

namespace vqnhite {

namespace {

HybridParams params_from_flat(const HybridParams& structure, const std::vector<double>& flat) {
  HybridParams p = structure;
  p.set_from_flat(flat);
  return p;
}

}  // namespace

Eigen::MatrixXcd fd_normalized_state_jacobian(const AnsatzCircuit& ansatz,
                                              const HybridParams& params,
                                              const StateVector& input, double h) {
  const auto state_map = [&](const std::vector<double>& flat) -> Eigen::VectorXcd {
    const HybridParams p = params_from_flat(params, flat);
    const HybridState state = build_hybrid_state(ansatz, p.theta, p.nn, input);
    return state_as_vector(state.normalized());
  };
  return finite_diff_jacobian(state_map, params.flatten(), h);
}

Eigen::MatrixXd fd_metric_oracle(const AnsatzCircuit& ansatz, const HybridParams& params,
                                 const StateVector& input, double h) {
  const Eigen::MatrixXcd jac = fd_normalized_state_jacobian(ansatz, params, input, h);
  return (jac.adjoint() * jac).real();
}

Eigen::VectorXd fd_energy_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                   const StateVector& input, const PauliSum& hamiltonian,
                                   double h) {
  const Eigen::MatrixXcd dense = to_dense(hamiltonian);
  const auto energy = [&](const std::vector<double>& flat) {
    const HybridParams p = params_from_flat(params, flat);
    const HybridState state = build_hybrid_state(ansatz, p.theta, p.nn, input);
    const Eigen::VectorXcd v = state_as_vector(state.normalized());
    return (v.adjoint() * dense * v)(0).real();
  };
  const auto grad = finite_diff_gradient(energy, params.flatten(), h);
  return Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
}

Eigen::VectorXd fd_norm_sq_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                    const StateVector& input, double h) {
  const auto norm_sq = [&](const std::vector<double>& flat) {
    const HybridParams p = params_from_flat(params, flat);
    const StateVector phi = run_circuit(ansatz, p.theta, input);
    return apply_f(p.nn, phi).squared_norm();
  };
  const auto grad = finite_diff_gradient(norm_sq, params.flatten(), h);
  return Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
}

Eigen::VectorXd fd_cost_gradient(const AnsatzCircuit& ansatz, const HybridParams& params,
                                 const StateVector& input, const StateVector& target,
                                 double h) {
  const auto cost = [&](const std::vector<double>& flat) {
    const HybridParams p = params_from_flat(params, flat);
    return cost_F(ansatz, p.theta, p.nn, input, target);
  };
  const auto grad = finite_diff_gradient(cost, params.flatten(), h);
  return Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
}

Eigen::MatrixXd fd_circuit_metric(const AnsatzCircuit& ansatz,
                                  const std::vector<double>& theta, const StateVector& input,
                                  double h) {
  const auto state_map = [&](const std::vector<double>& t) {
    return state_as_vector(run_circuit(ansatz, t, input));
  };
  const Eigen::MatrixXcd jac = finite_diff_jacobian(state_map, theta, h);
  return (jac.adjoint() * jac).real();
}

Eigen::VectorXd fd_circuit_force(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                                 const StateVector& input, const PauliSum& hamiltonian,
                                 double h) {
  const Eigen::MatrixXcd dense = to_dense(hamiltonian);
  const auto energy = [&](const std::vector<double>& t) {
    const Eigen::VectorXcd v = state_as_vector(run_circuit(ansatz, t, input));
    return (v.adjoint() * dense * v)(0).real();
  };
  const auto grad = finite_diff_gradient(energy, theta, h);
  Eigen::VectorXd force(static_cast<Eigen::Index>(grad.size()));
  for (std::size_t j = 0; j < grad.size(); ++j)
    force(static_cast<Eigen::Index>(j)) = -0.5 * grad[j];
  return force;
}

Eigen::MatrixXcd kron_pauli_matrix(const PauliString& p) {
  static const Eigen::Matrix2cd identity = Eigen::Matrix2cd::Identity();
  static const Eigen::Matrix2cd sigma_x = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd sigma_y =
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  static const Eigen::Matrix2cd sigma_z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  const auto factor_matrix = [](Pauli f) -> const Eigen::Matrix2cd& {
    switch (f) {
      case Pauli::X: return sigma_x;
      case Pauli::Y: return sigma_y;
      case Pauli::Z: return sigma_z;
      default: return identity;
    }
  };
  // Qubit 0 is the most significant factor: P = f(0) (x) f(1) (x) ... (x) f(n-1).
  Eigen::MatrixXcd out = factor_matrix(p.factor(0));
  for (int q = 1; q < p.n_qubits(); ++q) {
    const Eigen::Matrix2cd& next = factor_matrix(p.factor(q));
    Eigen::MatrixXcd grown(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        grown.block(i * 2, j * 2, 2, 2) = out(i, j) * next;
    out = std::move(grown);
  }
  return out;
}

Eigen::MatrixXcd kron_sum_matrix(const PauliSum& a) {
  const auto dim = static_cast<Eigen::Index>(1) << a.n_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : a.terms()) out += term.coeff * kron_pauli_matrix(term.string);
  return out;
}

}  // namespace vqnhite
