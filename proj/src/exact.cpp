#include "vqnhite/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnhite/errors.hpp"

namespace vqnhite {

SpectralDecomposition diagonalize(const PauliSum& h, int dense_limit) {
  const Eigen::MatrixXcd dense = to_dense(h, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd state_as_vector(const StateVector& psi) {
  return Eigen::Map<const Eigen::VectorXcd>(psi.amps.data(),
                                            static_cast<Eigen::Index>(psi.dim()));
}

StateVector vector_as_state(const Eigen::VectorXcd& v, int n_qubits) {
  StateVector psi(n_qubits);
  if (v.size() != static_cast<Eigen::Index>(psi.dim()))
    throw std::invalid_argument("vector_as_state: dimension mismatch");
  for (Eigen::Index i = 0; i < v.size(); ++i) psi.amps[static_cast<std::size_t>(i)] = v(i);
  return psi;
}

StateVector exact_ite(const SpectralDecomposition& spectral, const StateVector& psi0,
                      double beta) {
  if (beta < 0.0) throw std::invalid_argument("exact_ite: beta must be nonnegative");
  Eigen::VectorXcd coeffs = spectral.eigenvectors.adjoint() * state_as_vector(psi0);
  const double e_min = spectral.eigenvalues.minCoeff();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::exp(-beta * (spectral.eigenvalues(k) - e_min));
  const double norm = coeffs.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw DegeneracyError("exact_ite: evolved state has zero norm");
  Eigen::VectorXcd evolved = spectral.eigenvectors * (coeffs / norm);
  return vector_as_state(evolved, psi0.n_qubits);
}

StateVector exact_ite(const PauliSum& h, const StateVector& psi0, double beta) {
  if (h.n_qubits() != psi0.n_qubits)
    throw std::invalid_argument("exact_ite: dimension mismatch");
  return exact_ite(diagonalize(h), psi0, beta);
}

double fidelity(const StateVector& a, const StateVector& b) {
  constexpr double kNormTolerance = 1e-6;
  if (std::abs(a.norm() - 1.0) > kNormTolerance || std::abs(b.norm() - 1.0) > kNormTolerance)
    throw std::invalid_argument("fidelity: inputs must be normalized");
  return std::norm(inner(a, b));
}

std::vector<double> finite_diff_gradient(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff: step must be positive");
  std::vector<double> grad(x.size());
  std::vector<double> probe = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const double up = fn(probe);
    probe[j] = x[j] - h;
    const double down = fn(probe);
    probe[j] = x[j];
    grad[j] = (up - down) / (2.0 * h);
  }
  return grad;
}

Eigen::MatrixXcd finite_diff_jacobian(
    const std::function<Eigen::VectorXcd(const std::vector<double>&)>& fn,
    const std::vector<double>& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_diff: step must be positive");
  std::vector<double> probe = x;
  Eigen::MatrixXcd jac;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const Eigen::VectorXcd up = fn(probe);
    probe[j] = x[j] - h;
    const Eigen::VectorXcd down = fn(probe);
    probe[j] = x[j];
    if (jac.size() == 0) jac.resize(up.size(), static_cast<Eigen::Index>(x.size()));
    jac.col(static_cast<Eigen::Index>(j)) = (up - down) / (2.0 * h);
  }
  return jac;
}

}  // namespace vqnhite
