#include "vqnhite/statevector.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnhite/errors.hpp"

namespace vqnhite {

double StateVector::squared_norm() const {
  double total = 0.0;
  for (const auto& a : amps) total += std::norm(a);
  return total;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

void StateVector::normalize() {
  const double n = norm();
  if (n <= 0.0 || !std::isfinite(n))
    throw DegeneracyError("cannot normalize a zero or non-finite state");
  for (auto& a : amps) a /= n;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("inner: dimension mismatch");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.amps.size(); ++i) acc += std::conj(a.amps[i]) * b.amps[i];
  return acc;
}

StateVector initial_plus_state(int n) {
  if (n < 1) throw std::invalid_argument("initial_plus_state: need at least one qubit");
  StateVector psi(n);
  const double amp = std::pow(2.0, -0.5 * n);
  for (auto& a : psi.amps) a = Complex(amp, 0.0);
  return psi;
}

StateVector basis_state(int n, std::uint64_t bits) {
  StateVector psi(n);
  psi.amps[bits] = Complex(1.0, 0.0);
  return psi;
}

namespace {

inline void check_qubit(const StateVector& psi, int qubit) {
  if (qubit < 0 || qubit >= psi.n_qubits)
    throw std::invalid_argument("qubit index out of range");
}

}  // namespace

void apply_ry(StateVector& psi, int qubit, double angle) {
  check_qubit(psi, qubit);
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t stride = std::size_t(1) << (psi.n_qubits - 1 - qubit);
  for (std::size_t base = 0; base < psi.dim(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = psi.amps[i];
      const Complex a1 = psi.amps[i + stride];
      psi.amps[i] = c * a0 - s * a1;
      psi.amps[i + stride] = s * a0 + c * a1;
    }
  }
}

void apply_cz(StateVector& psi, int a, int b) {
  check_qubit(psi, a);
  check_qubit(psi, b);
  if (a == b) throw std::invalid_argument("apply_cz: qubits must differ");
  const std::uint64_t mask = (1ULL << (psi.n_qubits - 1 - a)) | (1ULL << (psi.n_qubits - 1 - b));
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if ((i & mask) == mask) psi.amps[i] = -psi.amps[i];
  }
}

void apply_cnot(StateVector& psi, int control, int target) {
  check_qubit(psi, control);
  check_qubit(psi, target);
  if (control == target) throw std::invalid_argument("apply_cnot: qubits must differ");
  const std::uint64_t cmask = 1ULL << (psi.n_qubits - 1 - control);
  const std::uint64_t tmask = 1ULL << (psi.n_qubits - 1 - target);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if ((i & cmask) != 0 && (i & tmask) == 0) std::swap(psi.amps[i], psi.amps[i | tmask]);
  }
}

void apply_pauli_inplace(StateVector& psi, const PauliString& p) {
  if (p.n_qubits() != psi.n_qubits)
    throw std::invalid_argument("apply_pauli: dimension mismatch");
  StateVector out(psi.n_qubits);
  for (std::size_t s = 0; s < psi.dim(); ++s) {
    const Complex a = psi.amps[s];
    if (a == Complex(0.0, 0.0)) continue;
    const auto r = pauli_apply(p, s);
    out.amps[r.bits] += r.phase * a;
  }
  psi = std::move(out);
}

StateVector apply_pauli(const PauliString& p, const StateVector& psi) {
  StateVector out = psi;
  apply_pauli_inplace(out, p);
  return out;
}

StateVector apply_sum(const PauliSum& op, const StateVector& psi) {
  if (op.n_qubits() != psi.n_qubits)
    throw std::invalid_argument("apply_sum: dimension mismatch");
  StateVector out(psi.n_qubits);
  for (const auto& term : op.terms()) {
    for (std::size_t s = 0; s < psi.dim(); ++s) {
      const Complex a = psi.amps[s];
      if (a == Complex(0.0, 0.0)) continue;
      const auto r = pauli_apply(term.string, s);
      out.amps[r.bits] += term.coeff * r.phase * a;
    }
  }
  return out;
}

int diagonal_sign(const PauliString& p, std::uint64_t bits) {
  int sign = 1;
  const int n = p.n_qubits();
  for (int q = 0; q < n; ++q) {
    if (p.factor(q) == Pauli::Z && bit_of(bits, q, n) == 1) sign = -sign;
  }
  return sign;
}

}  // namespace vqnhite
