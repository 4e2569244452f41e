#include "vqnhite/hybrid.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnhite/errors.hpp"
#include "vqnhite/exact.hpp"

namespace vqnhite {

std::vector<double> HybridParams::flatten() const {
  std::vector<double> flat = theta;
  const auto nn_flat = nn.to_flat();
  flat.insert(flat.end(), nn_flat.begin(), nn_flat.end());
  return flat;
}

void HybridParams::set_from_flat(std::span<const double> flat) {
  if (flat.size() != size())
    throw std::invalid_argument("HybridParams: flat record length mismatch");
  std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(theta.size()),
            theta.begin());
  nn = MlpParams::from_flat(nn.n_qubits(), flat.subspan(theta.size()));
}

StateVector HybridState::normalized() const {
  StateVector out = raw;
  for (auto& a : out.amps) a *= norm_const;
  return out;
}

Eigen::VectorXd DVector::flat() const {
  Eigen::VectorXd out(theta.size() + phi.size());
  out << theta, phi;
  return out;
}

namespace {

// Shared per-evaluation quantities for the metric, force, and cost gradients.
struct Workspace {
  StateVector phi;                        // U(theta)|0bar>
  std::vector<double> f;                  // f(s)
  std::vector<std::vector<double>> fgrad; // df(s)/dphi per bitstring
  StateVector raw;                        // f_hat U(theta)|0bar>
  double raw_sq_norm = 0.0;
  double norm_const = 0.0;
  std::vector<StateVector> dtheta;        // assembled d_j U(theta)|0bar>
};

Workspace make_workspace(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                         const MlpParams& nn, const StateVector& input, bool need_fgrad,
                         bool need_dtheta) {
  if (nn.n_qubits() != ansatz.n_qubits())
    throw std::invalid_argument("hybrid: network qubit count mismatch");
  Workspace ws;
  ws.phi = run_circuit(ansatz, theta, input);
  const std::size_t dim = ws.phi.dim();
  ws.f.resize(dim);
  if (need_fgrad) ws.fgrad.resize(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    if (need_fgrad) {
      ws.f[s] = nn_value_and_gradient(nn, s, ws.fgrad[s]);
    } else {
      ws.f[s] = nn_forward(nn, s);
    }
  }
  ws.raw = ws.phi;
  for (std::size_t s = 0; s < dim; ++s) ws.raw.amps[s] *= ws.f[s];
  ws.raw_sq_norm = ws.raw.squared_norm();
  if (!(ws.raw_sq_norm > 0.0) || !std::isfinite(ws.raw_sq_norm))
    throw DegeneracyError("hybrid state has zero or non-finite norm");
  ws.norm_const = 1.0 / std::sqrt(ws.raw_sq_norm);
  if (need_dtheta) {
    ws.dtheta.reserve(theta.size());
    for (int j = 0; j < ansatz.n_params(); ++j)
      ws.dtheta.push_back(assembled_derivative(ansatz, theta, j, input));
  }
  return ws;
}

DVector compute_D_from(const Workspace& ws) {
  const std::size_t dim = ws.phi.dim();
  const auto np = static_cast<Eigen::Index>(ws.dtheta.size());
  const auto nphi = static_cast<Eigen::Index>(dim > 0 ? ws.fgrad[0].size() : 0);
  DVector d;
  d.theta = Eigen::VectorXd::Zero(np);
  d.phi = Eigen::VectorXd::Zero(nphi);
  for (Eigen::Index j = 0; j < np; ++j) {
    double acc = 0.0;
    const auto& dj = ws.dtheta[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < dim; ++s)
      acc += (std::conj(dj.amps[s]) * ws.phi.amps[s]).real() * ws.f[s] * ws.f[s];
    d.theta(j) = acc;
  }
  for (std::size_t s = 0; s < dim; ++s) {
    const double weight = ws.f[s] * std::norm(ws.phi.amps[s]);
    for (Eigen::Index k = 0; k < nphi; ++k)
      d.phi(k) += weight * ws.fgrad[s][static_cast<std::size_t>(k)];
  }
  return d;
}

}  // namespace

HybridState build_hybrid_state(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                               const MlpParams& nn, const StateVector& input) {
  const Workspace ws = make_workspace(ansatz, theta, nn, input, false, false);
  return {ws.raw, ws.norm_const};
}

DVector compute_D(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                  const MlpParams& nn, const StateVector& input) {
  const Workspace ws = make_workspace(ansatz, theta, nn, input, true, true);
  return compute_D_from(ws);
}

double cost_F(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
              const MlpParams& nn, const StateVector& input, const StateVector& target) {
  const HybridState state = build_hybrid_state(ansatz, theta, nn, input);
  const Complex overlap = inner(target, state.raw) * state.norm_const;
  return 1.0 - std::norm(overlap);
}

Eigen::VectorXd cost_gradients(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                               const MlpParams& nn, const StateVector& input,
                               const StateVector& target) {
  const Workspace ws = make_workspace(ansatz, theta, nn, input, true, true);
  const DVector d = compute_D_from(ws);
  const std::size_t dim = ws.phi.dim();
  const auto np = static_cast<Eigen::Index>(ws.dtheta.size());
  const auto nphi = d.phi.size();
  const double c = ws.norm_const;

  // o = <target|phi~>; t_x = d/dx <phi~|target>.
  const Complex o = inner(target, ws.raw);
  Eigen::VectorXd grad(np + nphi);
  for (Eigen::Index j = 0; j < np; ++j) {
    Complex t_x(0.0, 0.0);
    const auto& dj = ws.dtheta[static_cast<std::size_t>(j)];
    for (std::size_t s = 0; s < dim; ++s)
      t_x += std::conj(ws.f[s] * dj.amps[s]) * target.amps[s];
    const double dc = -c * c * c * d.theta(j);
    grad(j) = -2.0 * c * (dc * std::norm(o) + c * (o * t_x).real());
  }
  for (Eigen::Index k = 0; k < nphi; ++k) {
    Complex t_x(0.0, 0.0);
    for (std::size_t s = 0; s < dim; ++s)
      t_x += ws.fgrad[s][static_cast<std::size_t>(k)] * std::conj(ws.phi.amps[s]) *
             target.amps[s];
    const double dc = -c * c * c * d.phi(k);
    grad(np + k) = -2.0 * c * (dc * std::norm(o) + c * (o * t_x).real());
  }
  return grad;
}

InitResult init_optimize(const AnsatzCircuit& ansatz, HybridParams start,
                         const StateVector& input, const StateVector& target, int iters,
                         double eta) {
  if (iters < 0) throw std::invalid_argument("init_optimize: iters must be nonnegative");
  InitResult result;
  result.params = std::move(start);
  std::vector<double> flat = result.params.flatten();
  for (int it = 0; it <= iters; ++it) {
    const double cost = cost_F(ansatz, result.params.theta, result.params.nn, input, target);
    if (!std::isfinite(cost))
      throw DivergenceError("init_optimize: non-finite cost at iteration " + std::to_string(it),
                            it);
    result.cost_history.push_back(cost);
    if (it == iters) break;
    const Eigen::VectorXd grad =
        cost_gradients(ansatz, result.params.theta, result.params.nn, input, target);
    for (std::size_t i = 0; i < flat.size(); ++i)
      flat[i] -= eta * grad(static_cast<Eigen::Index>(i));
    result.params.set_from_flat(flat);
  }
  return result;
}

Eigen::MatrixXd hybrid_metric(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                              const MlpParams& nn, const StateVector& input) {
  const Workspace ws = make_workspace(ansatz, theta, nn, input, true, true);
  const DVector d = compute_D_from(ws);
  const std::size_t dim = ws.phi.dim();
  const auto np = static_cast<Eigen::Index>(ws.dtheta.size());
  const auto nphi = d.phi.size();
  const Eigen::Index total = np + nphi;

  // Gram matrix of the unnormalized state derivatives, Re <d_a phi~ | d_b phi~>.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(total, total);
  for (Eigen::Index j = 0; j < np; ++j) {
    const auto& dj = ws.dtheta[static_cast<std::size_t>(j)];
    for (Eigen::Index k = j; k < np; ++k) {
      const auto& dk = ws.dtheta[static_cast<std::size_t>(k)];
      double acc = 0.0;
      for (std::size_t s = 0; s < dim; ++s)
        acc += (std::conj(dj.amps[s]) * dk.amps[s]).real() * ws.f[s] * ws.f[s];
      gram(j, k) = acc;
      gram(k, j) = acc;
    }
    for (Eigen::Index k = 0; k < nphi; ++k) {
      double acc = 0.0;
      for (std::size_t s = 0; s < dim; ++s)
        acc += (std::conj(dj.amps[s]) * ws.phi.amps[s]).real() * ws.f[s] *
               ws.fgrad[s][static_cast<std::size_t>(k)];
      gram(j, np + k) = acc;
      gram(np + k, j) = acc;
    }
  }
  for (std::size_t s = 0; s < dim; ++s) {
    const double weight = std::norm(ws.phi.amps[s]);
    const auto& gs = ws.fgrad[s];
    for (Eigen::Index j = 0; j < nphi; ++j) {
      const double gj = gs[static_cast<std::size_t>(j)] * weight;
      for (Eigen::Index k = j; k < nphi; ++k) {
        gram(np + j, np + k) += gj * gs[static_cast<std::size_t>(k)];
      }
    }
  }
  for (Eigen::Index j = 0; j < nphi; ++j)
    for (Eigen::Index k = 0; k < j; ++k) gram(np + j, np + k) = gram(np + k, np + j);

  const double c2 = ws.norm_const * ws.norm_const;
  const Eigen::VectorXd d_flat = d.flat();
  return c2 * gram - c2 * c2 * d_flat * d_flat.transpose();
}

Eigen::VectorXd hybrid_force(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                             const MlpParams& nn, const StateVector& input, const PauliSum& h) {
  if (h.n_qubits() != ansatz.n_qubits())
    throw std::invalid_argument("hybrid_force: Hamiltonian qubit count mismatch");
  const Workspace ws = make_workspace(ansatz, theta, nn, input, true, true);
  const DVector d = compute_D_from(ws);
  const std::size_t dim = ws.phi.dim();
  const auto np = static_cast<Eigen::Index>(ws.dtheta.size());
  const auto nphi = d.phi.size();

  const StateVector h_raw = apply_sum(h, ws.raw);
  const double c2 = ws.norm_const * ws.norm_const;
  const double energy = inner(ws.raw, h_raw).real() * c2;

  Eigen::VectorXd force(np + nphi);
  for (Eigen::Index j = 0; j < np; ++j) {
    const auto& dj = ws.dtheta[static_cast<std::size_t>(j)];
    double cross = 0.0;
    for (std::size_t s = 0; s < dim; ++s)
      cross += (std::conj(ws.f[s] * dj.amps[s]) * h_raw.amps[s]).real();
    force(j) = -c2 * cross + c2 * d.theta(j) * energy;
  }
  for (Eigen::Index k = 0; k < nphi; ++k) {
    double cross = 0.0;
    for (std::size_t s = 0; s < dim; ++s)
      cross += ws.fgrad[s][static_cast<std::size_t>(k)] *
               (std::conj(ws.phi.amps[s]) * h_raw.amps[s]).real();
    force(np + k) = -c2 * cross + c2 * d.phi(k) * energy;
  }
  return force;
}

double expectation_energy(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                          const MlpParams& nn, const StateVector& input, const PauliSum& h) {
  const Workspace ws = make_workspace(ansatz, theta, nn, input, false, false);
  const StateVector h_raw = apply_sum(h, ws.raw);
  return inner(ws.raw, h_raw).real() / ws.raw_sq_norm;
}

FidelityTrace vqnhite_evolve(const EvolutionConfig& config, const AnsatzCircuit& ansatz,
                             const PauliSum& h, const StateVector& psi0, std::uint64_t seed,
                             const VqnhiteOptions& options) {
  config.validate();
  if (h.n_qubits() != ansatz.n_qubits() || psi0.n_qubits != ansatz.n_qubits())
    throw std::invalid_argument("vqnhite_evolve: dimension mismatch");
  if (config.mode != ExpectationMode::Exact)
    throw std::invalid_argument(
        "vqnhite_evolve: only exact expectation mode is supported; the ancilla-circuit "
        "estimators are validated separately");

  const SpectralDecomposition spectral = diagonalize(h);

  HybridParams params;
  params.theta.assign(static_cast<std::size_t>(ansatz.n_params()), 0.0);
  params.nn = MlpParams::random_init(seed, ansatz.n_qubits());

  StateVector init_target;
  if (options.init_target == VqnhiteOptions::InitTarget::ExactIte) {
    init_target = exact_ite(spectral, psi0, config.dbeta);
  } else {
    const PauliSum propagator = taylor_ite_pauli(h, config.dbeta, options.taylor_order);
    init_target = apply_sum(propagator, psi0);
    init_target.normalize();
  }

  InitResult init =
      init_optimize(ansatz, std::move(params), psi0, init_target, options.init_iters,
                    options.lr);
  params = std::move(init.params);

  FidelityTrace trace;
  const auto record_point = [&](double beta) {
    const HybridState state = build_hybrid_state(ansatz, params.theta, params.nn, psi0);
    const StateVector normalized = state.normalized();
    const StateVector psi_exact = exact_ite(spectral, psi0, beta);
    TraceRecord record;
    record.beta = beta;
    record.method = "vqnhite";
    record.fidelity = fidelity(psi_exact, normalized);
    record.energy = expectation_energy(ansatz, params.theta, params.nn, psi0, h);
    trace.records.push_back(std::move(record));
    if (options.snapshot_sink) options.snapshot_sink(beta, params);
  };

  record_point(config.dbeta);

  std::vector<double> flat = params.flatten();
  const int steps = config.n_steps();
  for (int step = 2; step <= steps; ++step) {
    const double beta = step * config.dbeta;
    try {
      LinearSystem system;
      system.m = hybrid_metric(ansatz, params.theta, params.nn, psi0);
      system.c = hybrid_force(ansatz, params.theta, params.nn, psi0, h);
      const Eigen::VectorXd delta = solve_update(system, config.dbeta, config.ridge);
      for (std::size_t i = 0; i < flat.size(); ++i)
        flat[i] += delta(static_cast<Eigen::Index>(i));
      params.set_from_flat(flat);
      record_point(beta);
    } catch (const DegeneracyError& e) {
      throw DegeneracyError(std::string(e.what()) + " (at beta = " + std::to_string(beta) + ")");
    } catch (const SingularSystemError& e) {
      throw SingularSystemError(
          std::string(e.what()) + " (at beta = " + std::to_string(beta) + ")",
          e.smallest_eigenvalue());
    }
  }
  return trace;
}

}  // namespace vqnhite
