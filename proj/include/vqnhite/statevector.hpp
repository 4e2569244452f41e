#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vqnhite/pauli.hpp"

namespace vqnhite {

// Dense complex amplitudes over the computational basis. Qubit 0 is the most
// significant bit of the amplitude index.
struct StateVector {
  int n_qubits = 0;
  std::vector<Complex> amps;

  StateVector() = default;
  explicit StateVector(int n)
      : n_qubits(n), amps(std::size_t(1) << n, Complex(0.0, 0.0)) {}

  std::size_t dim() const { return amps.size(); }
  double squared_norm() const;
  double norm() const;
  void normalize();
};

// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector& a, const StateVector& b);

// Uniform superposition |+...+> on n qubits.
StateVector initial_plus_state(int n);

// Basis state |bits> on n qubits.
StateVector basis_state(int n, std::uint64_t bits);

// In-place single- and two-qubit gates.
void apply_ry(StateVector& psi, int qubit, double angle);  // exp(-i angle Y/2)
void apply_cz(StateVector& psi, int a, int b);
void apply_cnot(StateVector& psi, int control, int target);
void apply_pauli_inplace(StateVector& psi, const PauliString& p);

// P |psi> as a new state.
StateVector apply_pauli(const PauliString& p, const StateVector& psi);

// sum_j c_j P_j |psi>.
StateVector apply_sum(const PauliSum& op, const StateVector& psi);

// Diagonal +-1 eigenvalue of a diagonal Pauli string on basis state |bits|.
int diagonal_sign(const PauliString& p, std::uint64_t bits);

inline int bit_of(std::uint64_t bits, int qubit, int n) {
  return static_cast<int>((bits >> (n - 1 - qubit)) & 1ULL);
}

}  // namespace vqnhite
