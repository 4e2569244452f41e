#include <cmath>
#include <stdexcept>

#include "vqnhite/bench.hpp"
#include "vqnhite/exact.hpp"
#include "vqnhite/hadamard.hpp"
#include "vqnhite/oracles.hpp"
#include "vqnhite/rng.hpp"

namespace vqnhite {

namespace {

std::vector<double> random_theta(Rng& rng, int n_params) {
  std::vector<double> theta(static_cast<std::size_t>(n_params));
  for (auto& t : theta) t = uniform_range(rng, -3.141592653589793, 3.141592653589793);
  return theta;
}

// Network with every layer randomized (unlike the zero-last-layer init used
// for evolution), so that gradients probe the full parameter set.
MlpParams random_full_mlp(Rng& rng, int n) {
  MlpParams nn = MlpParams::zeros(n);
  for (auto& layer : nn.layers()) {
    const double scale = layer.in > 0 ? 1.0 / std::sqrt(static_cast<double>(layer.in)) : 0.5;
    for (auto& w : layer.weights) w = uniform_range(rng, -scale, scale);
    for (auto& b : layer.biases) b = uniform_range(rng, -scale, scale);
  }
  return nn;
}

double rel_error(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  const double scale = std::max(want.norm(), 1e-12);
  return (got - want).norm() / scale;
}

double rel_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  const double scale = std::max(want.norm(), 1e-12);
  return (got - want).norm() / scale;
}

PauliString random_pauli_string(Rng& rng, int n, bool force_offdiagonal = false) {
  while (true) {
    PauliString p(n);
    for (int q = 0; q < n; ++q)
      p.set_factor(q, static_cast<Pauli>(static_cast<int>(uniform_unit(rng) * 4) & 3));
    if (!force_offdiagonal || p.first_offdiagonal_qubit()) return p;
  }
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite) {
  std::vector<CheckResult> checks;
  const auto add = [&checks](const std::string& name, double tolerance, double observed) {
    checks.push_back({name, tolerance, observed, observed <= tolerance});
  };

  if (suite == "gradients") {
    Rng rng(2024);
    double worst_nn = 0.0;
    double worst_cost = 0.0;
    double worst_d = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 2 + static_cast<int>(uniform_unit(rng) * 3);  // 2..4
      const AnsatzCircuit ansatz = AnsatzCircuit::make(
          trial % 2 == 0 ? AnsatzLayout::NearestNeighbor : AnsatzLayout::AllToAll, n, 2);
      HybridParams params;
      params.theta = random_theta(rng, ansatz.n_params());
      params.nn = random_full_mlp(rng, n);
      const StateVector input = initial_plus_state(n);
      const std::uint64_t bits =
          static_cast<std::uint64_t>(uniform_unit(rng) * static_cast<double>(1ULL << n));

      // nn_gradient against central differences of nn_forward.
      {
        const auto analytic = nn_gradient(params.nn, bits);
        auto flat = params.nn.to_flat();
        const auto fd = finite_diff_gradient(
            [&](const std::vector<double>& x) {
              return nn_forward(MlpParams::from_flat(n, x), bits);
            },
            flat, 1e-6);
        Eigen::Map<const Eigen::VectorXd> a(analytic.data(),
                                            static_cast<Eigen::Index>(analytic.size()));
        Eigen::Map<const Eigen::VectorXd> b(fd.data(), static_cast<Eigen::Index>(fd.size()));
        worst_nn = std::max(worst_nn, rel_error(Eigen::VectorXd(a), Eigen::VectorXd(b)));
      }
      // cost_gradients against finite differences of cost_F.
      {
        const StateVector target = exact_ite(
            build_heisenberg(n, -1.0, uniform_fields(rng(), n)), input, 0.1);
        const Eigen::VectorXd analytic =
            cost_gradients(ansatz, params.theta, params.nn, input, target);
        const Eigen::VectorXd fd = fd_cost_gradient(ansatz, params, input, target, 1e-5);
        worst_cost = std::max(worst_cost, rel_error(analytic, fd));
      }
      // compute_D against half the norm-squared gradient.
      {
        const DVector d = compute_D(ansatz, params.theta, params.nn, input);
        const Eigen::VectorXd fd = 0.5 * fd_norm_sq_gradient(ansatz, params, input, 1e-5);
        worst_d = std::max(worst_d, rel_error(d.flat(), fd));
      }
    }
    add("nn_gradient vs finite differences (50 instances)", 1e-5, worst_nn);
    add("cost_gradients vs finite differences (50 instances)", 1e-5, worst_cost);
    add("compute_D vs half norm-gradient (50 instances)", 1e-5, worst_d);
    return checks;
  }

  if (suite == "oracles") {
    Rng rng(7);
    // Pauli products against dense matrices.
    double worst_mul = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      const int n = 1 + static_cast<int>(uniform_unit(rng) * 4);
      const PauliString a = random_pauli_string(rng, n);
      const PauliString b = random_pauli_string(rng, n);
      const auto prod = pauli_mul(a, b);
      const Eigen::MatrixXcd direct = kron_pauli_matrix(a) * kron_pauli_matrix(b);
      const Eigen::MatrixXcd via = prod.phase * kron_pauli_matrix(prod.string);
      worst_mul = std::max(worst_mul, (direct - via).norm());
    }
    add("pauli_mul vs dense product (n <= 4)", 0.0, worst_mul);

    const PauliSum h3 = build_heisenberg(3, -1.0, {0.3, -0.2, 0.5});
    add("to_dense vs Kronecker construction", 1e-12,
        (to_dense(h3) - kron_sum_matrix(h3)).norm());

    // VITE metric and force, both analytic routes and finite differences.
    double worst_m_routes = 0.0;
    double worst_m_fd = 0.0;
    double worst_c_fd = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 3;
      const AnsatzCircuit ansatz = AnsatzCircuit::make(AnsatzLayout::NearestNeighbor, n, 2);
      const auto theta = random_theta(rng, ansatz.n_params());
      const StateVector input = initial_plus_state(n);
      const PauliSum h = build_heisenberg(n, -1.0, uniform_fields(rng(), n));
      const Eigen::MatrixXd m_direct = compute_M(ansatz, theta, input);
      const Eigen::MatrixXd m_sandwich = compute_M_sandwich(ansatz, theta, input);
      worst_m_routes = std::max(worst_m_routes, (m_direct - m_sandwich).norm());
      worst_m_fd =
          std::max(worst_m_fd, rel_error(m_direct, fd_circuit_metric(ansatz, theta, input, 1e-5)));
      worst_c_fd = std::max(
          worst_c_fd, rel_error(Eigen::VectorXd(compute_C(ansatz, theta, h, input)),
                                fd_circuit_force(ansatz, theta, input, h, 1e-5)));
    }
    add("metric: derivative-state route vs expanded route", 1e-10, worst_m_routes);
    add("metric vs finite-difference Gram (relative)", 1e-6, worst_m_fd);
    add("force vs -1/2 energy gradient (relative)", 1e-6, worst_c_fd);

    // Hybrid metric and force against the normalized-state oracles.
    double worst_hm = 0.0;
    double worst_hf = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const int n = 3;
      const AnsatzCircuit ansatz = AnsatzCircuit::make(AnsatzLayout::AllToAll, n, 2);
      HybridParams params;
      params.theta = random_theta(rng, ansatz.n_params());
      params.nn = random_full_mlp(rng, n);
      const StateVector input = initial_plus_state(n);
      const PauliSum h = build_heisenberg(n, -1.0, uniform_fields(rng(), n));
      const Eigen::MatrixXd metric = hybrid_metric(ansatz, params.theta, params.nn, input);
      const Eigen::MatrixXd oracle = fd_metric_oracle(ansatz, params, input, 1e-5);
      worst_hm = std::max(worst_hm, (metric - oracle).cwiseAbs().maxCoeff());
      const Eigen::VectorXd force = hybrid_force(ansatz, params.theta, params.nn, input, h);
      const Eigen::VectorXd f_oracle =
          -0.5 * fd_energy_gradient(ansatz, params, input, h, 1e-5);
      worst_hf = std::max(worst_hf, (force - f_oracle).cwiseAbs().maxCoeff());
    }
    add("hybrid metric vs finite-difference Gram (entrywise)", 1e-4, worst_hm);
    add("hybrid force vs -1/2 energy gradient (entrywise)", 1e-4, worst_hf);

    // Exact propagator physics.
    {
      const PauliSum h = build_heisenberg(4, -1.0, uniform_fields(11, 4));
      const SpectralDecomposition spectral = diagonalize(h);
      const StateVector psi0 = initial_plus_state(4);
      const StateVector two_step =
          exact_ite(spectral, exact_ite(spectral, psi0, 0.7), 1.1);
      const StateVector direct = exact_ite(spectral, psi0, 1.8);
      double diff = 0.0;
      for (std::size_t i = 0; i < direct.dim(); ++i)
        diff += std::norm(direct.amps[i] - two_step.amps[i]);
      add("exact propagator semigroup property", 1e-10, std::sqrt(diff));

      // Residual of the normalized flow equation via centered differences.
      const double beta = 0.9;
      const double h_step = 1e-5;
      const StateVector up = exact_ite(spectral, psi0, beta + h_step);
      const StateVector down = exact_ite(spectral, psi0, beta - h_step);
      const StateVector mid = exact_ite(spectral, psi0, beta);
      const StateVector h_mid = apply_sum(h, mid);
      const double energy = inner(mid, h_mid).real();
      double residual = 0.0;
      for (std::size_t i = 0; i < mid.dim(); ++i) {
        const Complex d_beta = (up.amps[i] - down.amps[i]) / (2.0 * h_step);
        residual += std::norm(d_beta + h_mid.amps[i] - energy * mid.amps[i]);
      }
      add("normalized flow equation residual", 1e-6, std::sqrt(residual));
    }
    return checks;
  }

  if (suite == "hadamard") {
    Rng rng(99);
    const int n = 3;
    const AnsatzCircuit ansatz = AnsatzCircuit::make(AnsatzLayout::NearestNeighbor, n, 2);
    const StateVector input = initial_plus_state(n);
    const auto theta = random_theta(rng, ansatz.n_params());
    const MlpParams nn = random_full_mlp(rng, n);
    const PauliSum h = build_heisenberg(n, -1.0, uniform_fields(5, n));

    // Plain overlap test against direct state algebra.
    {
      const auto bra_states = derivative_states(ansatz, theta, 0, input);
      const auto ket_states = derivative_states(ansatz, theta, 2, input);
      AncillaJob job;
      job.n_system = n;
      job.system_initial = input;
      job.phase = 0.4;
      job.ops = {{0, JobOp{OpCircuit{ansatz, theta, 0, PauliString::single(n, ansatz.rotation_qubit(0), Pauli::Y)}}},
                 {1, JobOp{OpCircuit{ansatz, theta, 2, PauliString::single(n, ansatz.rotation_qubit(2), Pauli::Y)}}}};
      const double direct =
          (Complex(std::cos(0.4), std::sin(0.4)) *
           inner(bra_states[0].second, ket_states[0].second))
              .real();
      add("hadamard_test vs direct inner product", 1e-12,
          std::abs(hadamard_test(job).value - direct));

      AncillaJob flipped = job;
      flipped.phase += 3.141592653589793;
      add("phase offset + pi flips the estimate sign", 1e-12,
          std::abs(hadamard_test(flipped).value + direct));
    }

    // Measurement circuit V contracts.
    {
      double worst_unitary = 0.0;
      double worst_conjugation = 0.0;
      for (int trial = 0; trial < 10; ++trial) {
        const PauliString p = random_pauli_string(rng, 4, true);
        const MeasurementBasisV basis = build_V(p);
        const auto dim = basis.v.rows();
        worst_unitary = std::max(
            worst_unitary,
            (basis.v.adjoint() * basis.v - Eigen::MatrixXcd::Identity(dim, dim)).norm());
        const PauliString z_pivot = PauliString::single(4, basis.pivot, Pauli::Z);
        const Eigen::MatrixXcd conjugated =
            basis.v.adjoint() * kron_pauli_matrix(z_pivot) * basis.v;
        worst_conjugation =
            std::max(worst_conjugation, (conjugated - kron_pauli_matrix(p)).norm());
      }
      add("V unitarity (random 4-qubit strings)", 1e-12, worst_unitary);
      add("V conjugates pivot Z into the target string", 1e-10, worst_conjugation);
    }

    // Eigenspace probabilities against direct projections.
    {
      const PauliString p("XYZ");
      const StateVector phi = run_circuit(ansatz, theta, input);
      const auto rows = estimate_pm_probs(phi, p, 0);
      const Eigen::MatrixXcd dense = kron_pauli_matrix(p);
      const Eigen::VectorXcd v = state_as_vector(phi);
      double total = 0.0;
      double worst = 0.0;
      for (const auto& row : rows) {
        // Projector pair reconstructed from the eigenstates directly.
        const auto apply = pauli_apply(p, row.label);
        Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(v.size());
        plus(static_cast<Eigen::Index>(row.label)) = std::conj(apply.phase) / std::sqrt(2.0);
        plus(static_cast<Eigen::Index>(apply.bits)) += 1.0 / std::sqrt(2.0);
        Eigen::VectorXcd minus = Eigen::VectorXcd::Zero(v.size());
        minus(static_cast<Eigen::Index>(row.label)) = std::conj(apply.phase) / std::sqrt(2.0);
        minus(static_cast<Eigen::Index>(apply.bits)) -= 1.0 / std::sqrt(2.0);
        worst = std::max(worst, std::abs(row.p_plus - std::norm(plus.dot(v))));
        worst = std::max(worst, std::abs(row.p_minus - std::norm(minus.dot(v))));
        total += row.p_plus + row.p_minus;
      }
      add("eigenspace probabilities vs direct projection", 1e-12, worst);
      add("eigenspace probabilities sum to one", 1e-10, std::abs(total - 1.0));

      const StateVector phi_tilde = apply_f(nn, phi);
      const Eigen::VectorXcd vt = state_as_vector(phi_tilde);
      const double direct = (vt.adjoint() * dense * vt)(0).real();
      const Estimate est = nondiagonal_expectation(ansatz, theta, &nn, p, input, 0);
      add("NN-weighted expectation vs dense", 1e-10, std::abs(est.value - direct));
    }

    // Appendix estimators against module-level quantities.
    {
      const DVector d = compute_D(ansatz, theta, nn, input);
      const auto f_values = nn_forward_all(nn);
      const Estimate a1 = fig5a1(
          ansatz, theta, 1, [&](std::uint64_t s) { return f_values[s] * f_values[s]; }, input);
      add("fig5a1 with f^2 weight reproduces D_theta", 1e-10,
          std::abs(a1.value - d.theta(1)));

      // theta-theta Gram entry with f^2 weight.
      const auto dj = assembled_derivative(ansatz, theta, 0, input);
      const auto dk = assembled_derivative(ansatz, theta, 2, input);
      double gram = 0.0;
      for (std::size_t s = 0; s < dj.dim(); ++s)
        gram += (std::conj(dj.amps[s]) * dk.amps[s]).real() * f_values[s] * f_values[s];
      const Estimate b = fig5b(
          ansatz, theta, 0, 2, [&](std::uint64_t s) { return f_values[s] * f_values[s]; },
          input);
      add("fig5b with f^2 weight reproduces the theta-theta Gram entry", 1e-10,
          std::abs(b.value - gram));

      const PauliSum propagator = taylor_ite_pauli(h, 0.1, 2);
      const StateVector phi = run_circuit(ansatz, theta, input);
      const StateVector phi_tilde = apply_f(nn, phi);
      const StateVector target_unnorm = apply_sum(propagator, input);
      const ComplexEstimate c = fig5c(
          ansatz, theta, propagator, [&](std::uint64_t s) { return f_values[s]; }, input);
      add("fig5c reproduces the truncated-propagator overlap", 1e-10,
          std::abs(c.value - inner(target_unnorm, phi_tilde)));

      const ComplexEstimate d5 = fig5d(
          ansatz, theta, 1, propagator, [&](std::uint64_t s) { return f_values[s]; }, input);
      const auto overlap_fn = [&](const std::vector<double>& t) -> Eigen::VectorXcd {
        const StateVector moved = apply_f(nn, run_circuit(ansatz, t, input));
        Eigen::VectorXcd out(1);
        out(0) = inner(target_unnorm, moved);
        return out;
      };
      const Eigen::MatrixXcd jac = finite_diff_jacobian(overlap_fn, theta, 1e-5);
      add("fig5d matches the overlap derivative (finite differences)", 1e-5,
          std::abs(d5.value - jac(0, 1)));
    }

    // Reported standard error follows the 1/sqrt(shots) law.
    {
      AncillaJob job;
      job.n_system = n;
      job.system_initial = input;
      job.phase = 0.7;
      job.ops = {{0, JobOp{OpCircuit{ansatz, theta, -1, PauliString(n)}}},
                 {1, JobOp{OpPauli{PauliString("XZY")}}}};
      std::vector<double> log_shots;
      std::vector<double> log_se;
      for (int shots : {1000, 10000, 100000}) {
        job.shots = shots;
        job.seed = derive_seed(33, static_cast<std::uint64_t>(shots));
        const Estimate est = hadamard_test(job);
        log_shots.push_back(std::log(static_cast<double>(shots)));
        log_se.push_back(std::log(est.std_error));
      }
      const double slope = (log_se.back() - log_se.front()) /
                           (log_shots.back() - log_shots.front());
      add("standard error slope vs shots (|slope + 0.5|)", 0.05, std::abs(slope + 0.5));
    }
    return checks;
  }

  if (suite == "convergence") {
    // Truncated propagator: error vs the dense exponential scales as dbeta^3
    // (exponent 3 +- 20%).
    {
      const PauliSum h = build_heisenberg(2, -1.0, {0.4, -0.7});
      const SpectralDecomposition spectral = diagonalize(h);
      const auto exp_error = [&](double dbeta) {
        Eigen::MatrixXcd exact = Eigen::MatrixXcd::Zero(4, 4);
        for (Eigen::Index k = 0; k < 4; ++k)
          exact += std::exp(-dbeta * spectral.eigenvalues(k)) *
                   spectral.eigenvectors.col(k) * spectral.eigenvectors.col(k).adjoint();
        return (to_dense(taylor_ite_pauli(h, dbeta, 2)) - exact).norm();
      };
      const double exponent = std::log2(exp_error(0.1) / exp_error(0.05));
      add("propagator truncation exponent (target 3 +- 20%)", 0.6, std::abs(exponent - 3.0));
    }
    // Euler integration order, measured on the evolved parameter vector by
    // successive step halving: || x_{2d} - x_d || / || x_d - x_{d/2} || -> 2.
    {
      const PauliSum h = build_heisenberg(2, -1.0, uniform_fields(3, 2));
      const AnsatzCircuit ansatz = AnsatzCircuit::make(AnsatzLayout::NearestNeighbor, 2, 2);
      const StateVector psi0 = initial_plus_state(2);
      const auto terminal_theta = [&](double dbeta) {
        EvolutionConfig config;
        config.dbeta = dbeta;
        config.beta_max = 6.0;
        std::vector<double> theta(static_cast<std::size_t>(ansatz.n_params()), 0.0);
        for (int step = 1; step <= config.n_steps(); ++step) {
          LinearSystem system{compute_M(ansatz, theta, psi0),
                              compute_C(ansatz, theta, h, psi0)};
          const Eigen::VectorXd delta = solve_update(system, config.dbeta, config.ridge);
          for (std::size_t i = 0; i < theta.size(); ++i)
            theta[i] += delta(static_cast<Eigen::Index>(i));
        }
        return Eigen::Map<const Eigen::VectorXd>(theta.data(),
                                                 static_cast<Eigen::Index>(theta.size()))
            .eval();
      };
      const Eigen::VectorXd coarse = terminal_theta(0.2);
      const Eigen::VectorXd mid = terminal_theta(0.1);
      const Eigen::VectorXd fine = terminal_theta(0.05);
      const double exponent = std::log2((coarse - mid).norm() / (mid - fine).norm());
      add("Euler global-error exponent (target 1 +- 20%)", 0.2, std::abs(exponent - 1.0));
    }
    return checks;
  }

  throw std::invalid_argument("unknown verify suite: " + suite +
                              " (expected gradients|oracles|hadamard|convergence)");
}

}  // namespace vqnhite
