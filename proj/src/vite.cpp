#include "vqnhite/vite.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnhite/errors.hpp"
#include "vqnhite/exact.hpp"
#include "vqnhite/hadamard.hpp"

namespace vqnhite {

void EvolutionConfig::validate() const {
  if (!(dbeta > 0.0)) throw std::invalid_argument("config: dbeta must be positive");
  if (beta_max < dbeta) throw std::invalid_argument("config: beta_max must be >= dbeta");
  if (ridge < 0.0) throw std::invalid_argument("config: ridge must be nonnegative");
  if (shots < 0) throw std::invalid_argument("config: shots must be nonnegative");
}

int EvolutionConfig::n_steps() const {
  return static_cast<int>(std::ceil(beta_max / dbeta - 1e-12));
}

Eigen::MatrixXd compute_M(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const StateVector& input) {
  const int np = ansatz.n_params();
  std::vector<StateVector> derivs;
  derivs.reserve(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j) derivs.push_back(assembled_derivative(ansatz, theta, j, input));
  Eigen::MatrixXd m(np, np);
  for (int j = 0; j < np; ++j) {
    for (int k = j; k < np; ++k) {
      const double value = inner(derivs[static_cast<std::size_t>(j)],
                                 derivs[static_cast<std::size_t>(k)])
                               .real();
      m(j, k) = value;
      m(k, j) = value;
    }
  }
  return m;
}

Eigen::MatrixXd compute_M_sandwich(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta,
                                   const StateVector& input) {
  const int np = ansatz.n_params();
  // Unit-norm states with one generator inserted, plus their coefficients.
  std::vector<std::vector<std::pair<Complex, StateVector>>> pieces;
  pieces.reserve(static_cast<std::size_t>(np));
  for (int j = 0; j < np; ++j) pieces.push_back(derivative_states(ansatz, theta, j, input));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(np, np);
  for (int j = 0; j < np; ++j) {
    for (int k = j; k < np; ++k) {
      double value = 0.0;
      for (const auto& [a_j, state_j] : pieces[static_cast<std::size_t>(j)]) {
        for (const auto& [a_k, state_k] : pieces[static_cast<std::size_t>(k)]) {
          value += (std::conj(a_j) * a_k * inner(state_j, state_k)).real();
        }
      }
      m(j, k) = value;
      m(k, j) = value;
    }
  }
  return m;
}

Eigen::MatrixXd compute_M_hadamard(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta,
                                   const StateVector& input, int shots, std::uint64_t seed) {
  const int np = ansatz.n_params();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(np, np);
  std::uint64_t job_index = 0;
  for (int j = 0; j < np; ++j) {
    for (int k = j; k < np; ++k) {
      double value = 0.0;
      for (const auto& bra : ansatz.derivative_terms(j)) {
        for (const auto& ket : ansatz.derivative_terms(k)) {
          AncillaJob job;
          job.n_system = ansatz.n_qubits();
          job.system_initial = input;
          job.phase = ket.phase - bra.phase;
          job.ops = {{0, JobOp{OpCircuit{ansatz, theta, j, bra.generator}}},
                     {1, JobOp{OpCircuit{ansatz, theta, k, ket.generator}}}};
          job.shots = shots;
          job.seed = derive_seed(seed, job_index++);
          value += bra.r * ket.r * hadamard_test(job).value;
        }
      }
      m(j, k) = value;
      m(k, j) = value;
    }
  }
  return m;
}

Eigen::VectorXd compute_C(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const PauliSum& h, const StateVector& input) {
  if (h.n_qubits() != ansatz.n_qubits())
    throw std::invalid_argument("compute_C: Hamiltonian qubit count mismatch");
  const int np = ansatz.n_params();
  const StateVector phi = run_circuit(ansatz, theta, input);
  const StateVector h_phi = apply_sum(h, phi);
  Eigen::VectorXd c(np);
  for (int j = 0; j < np; ++j) {
    const StateVector dj = assembled_derivative(ansatz, theta, j, input);
    c(j) = -inner(h_phi, dj).real();
  }
  return c;
}

Eigen::VectorXd compute_C_hadamard(const AnsatzCircuit& ansatz,
                                   const std::vector<double>& theta, const PauliSum& h,
                                   const StateVector& input, int shots, std::uint64_t seed) {
  const int np = ansatz.n_params();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(np);
  std::uint64_t job_index = 0;
  for (int j = 0; j < np; ++j) {
    double value = 0.0;
    for (const auto& term : h.terms()) {
      for (const auto& deriv : ansatz.derivative_terms(j)) {
        AncillaJob job;
        job.n_system = ansatz.n_qubits();
        job.system_initial = input;
        job.phase = deriv.phase;
        job.ops = {{0, JobOp{OpCircuit{ansatz, theta, -1, PauliString(ansatz.n_qubits())}}},
                   {1, JobOp{OpCircuit{ansatz, theta, j, deriv.generator}}},
                   {1, JobOp{OpPauli{term.string}}}};
        job.shots = shots;
        job.seed = derive_seed(seed, job_index++);
        value += term.coeff.real() * deriv.r * hadamard_test(job).value;
      }
    }
    c(j) = -value;
  }
  return c;
}

Eigen::VectorXd solve_update(const LinearSystem& system, double dbeta, double ridge) {
  if (system.m.rows() != system.m.cols() || system.m.rows() != system.c.size())
    throw std::invalid_argument("solve_update: inconsistent system dimensions");
  if (ridge < 0.0) throw std::invalid_argument("solve_update: ridge must be nonnegative");
  const Eigen::Index n = system.m.rows();
  if (ridge == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(system.m);
    const double smallest = eigs.eigenvalues().minCoeff();
    const double largest = eigs.eigenvalues().cwiseAbs().maxCoeff();
    if (smallest <= largest * 1e-12) {
      throw SingularSystemError(
          "solve_update: singular metric with smallest eigenvalue " + std::to_string(smallest),
          smallest);
    }
  }
  const Eigen::MatrixXd regularized =
      system.m + ridge * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd delta = regularized.ldlt().solve(system.c) * dbeta;
  if (!delta.allFinite())
    throw SingularSystemError("solve_update: non-finite update from singular system", 0.0);
  return delta;
}

FidelityTrace vite_evolve(const EvolutionConfig& config, const AnsatzCircuit& ansatz,
                          const PauliSum& h, const StateVector& psi0) {
  config.validate();
  if (h.n_qubits() != ansatz.n_qubits() || psi0.n_qubits != ansatz.n_qubits())
    throw std::invalid_argument("vite_evolve: dimension mismatch");
  const SpectralDecomposition spectral = diagonalize(h);
  std::vector<double> theta(static_cast<std::size_t>(ansatz.n_params()), 0.0);

  FidelityTrace trace;
  const int steps = config.n_steps();
  for (int step = 1; step <= steps; ++step) {
    LinearSystem system;
    if (config.mode == ExpectationMode::Exact) {
      system.m = compute_M(ansatz, theta, psi0);
      system.c = compute_C(ansatz, theta, h, psi0);
    } else {
      const std::uint64_t step_seed = derive_seed(config.seed, static_cast<std::uint64_t>(step));
      system.m = compute_M_hadamard(ansatz, theta, psi0, config.shots, step_seed);
      system.c = compute_C_hadamard(ansatz, theta, h, psi0, config.shots,
                                    derive_seed(step_seed, 1));
    }
    const Eigen::VectorXd delta = solve_update(system, config.dbeta, config.ridge);
    for (std::size_t j = 0; j < theta.size(); ++j) theta[j] += delta(static_cast<Eigen::Index>(j));

    const double beta = step * config.dbeta;
    const StateVector phi = run_circuit(ansatz, theta, psi0);
    const StateVector psi_exact = exact_ite(spectral, psi0, beta);
    TraceRecord record;
    record.beta = beta;
    record.method = "vite";
    record.fidelity = fidelity(psi_exact, phi);
    record.energy = inner(phi, apply_sum(h, phi)).real();
    trace.records.push_back(std::move(record));
  }
  return trace;
}

}  // namespace vqnhite
