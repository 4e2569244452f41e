#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace vqnhite {

using Complex = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter(Pauli p);
Pauli pauli_from_letter(char c);

// Tensor product of single-qubit Pauli factors, one letter per qubit.
// Qubit 0 is the most significant bit of basis-state indices.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);             // identity on n qubits
  explicit PauliString(std::string_view letters); // e.g. "XYZ", "IZZI"

  static PauliString single(int n_qubits, int qubit, Pauli p);

  int n_qubits() const { return static_cast<int>(factors_.size()); }
  Pauli factor(int qubit) const { return factors_[static_cast<std::size_t>(qubit)]; }
  void set_factor(int qubit, Pauli p) { factors_[static_cast<std::size_t>(qubit)] = p; }
  const std::vector<Pauli>& factors() const { return factors_; }

  bool is_identity() const;
  // True when every factor is I or Z (diagonal in the computational basis).
  bool is_diagonal() const;
  // Index of the first qubit carrying X or Y, if any.
  std::optional<int> first_offdiagonal_qubit() const;
  // Bit set where the string flips the corresponding qubit (X or Y factor),
  // in the same most-significant-first packing as basis-state indices.
  std::uint64_t flip_mask() const;

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  bool operator<(const PauliString& other) const { return factors_ < other.factors_; }

 private:
  std::vector<Pauli> factors_;
};

struct PauliApplyResult {
  Complex phase;       // one of {1, i, -1, -i}
  std::uint64_t bits;  // transformed basis state
};

// Action of P on a computational-basis state: P|s> = phase * |s~>.
PauliApplyResult pauli_apply(const PauliString& p, std::uint64_t bits);

// Same action with the phase as a quarter-turn exponent (phase = i^quarter).
// Exact integer arithmetic; used wherever phases must cancel exactly.
struct PauliApplyQuarter {
  int quarter;  // 0..3
  std::uint64_t bits;
};
PauliApplyQuarter pauli_apply_quarter(const PauliString& p, std::uint64_t bits);

struct PauliMulResult {
  Complex phase;  // one of {1, i, -1, -i}
  PauliString string;
};

// Product of two Pauli strings: A * B = phase * C.
PauliMulResult pauli_mul(const PauliString& a, const PauliString& b);

struct PauliMulQuarter {
  int quarter;
  PauliString string;
};
PauliMulQuarter pauli_mul_quarter(const PauliString& a, const PauliString& b);

inline Complex quarter_phase(int quarter) {
  static constexpr Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[quarter & 3];
}

struct PauliTerm {
  Complex coeff;
  PauliString string;
};

// Weighted sum of Pauli strings in canonical merged form: terms sorted by
// string, no duplicate strings, coefficients below the merge tolerance
// dropped. Hamiltonians additionally carry purely real coefficients.
class PauliSum {
 public:
  static constexpr double kMergeTolerance = 1e-12;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  // Merges duplicates, prunes negligible coefficients, sorts.
  static PauliSum from_terms(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool all_coeffs_real(double tol = 1e-10) const;

  PauliSum scaled(Complex factor) const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

// Heisenberg chain with a longitudinal field, open boundary:
//   J * sum_j (X_j X_{j+1} + Y_j Y_{j+1} + Z_j Z_{j+1}) + sum_j h_j Z_j.
PauliSum build_heisenberg(int n, double j, const std::vector<double>& fields);

// Truncated series of exp(-H * dbeta) as a merged Pauli sum.
// order 1: I - H db;  order 2: I - H db + (H db)^2 / 2.
PauliSum taylor_ite_pauli(const PauliSum& h, double dbeta, int order);

inline constexpr int kDefaultDenseLimit = 12;

Eigen::MatrixXcd to_dense(const PauliString& p);
Eigen::MatrixXcd to_dense(const PauliSum& a, int dense_limit = kDefaultDenseLimit);

// Plain-text Hamiltonian description: `key = value` lines with keys
// n, J, fields (comma-separated reals) or field_seed. '#' starts a comment.
struct HamiltonianSpec {
  int n = 0;
  double j = 0.0;
  std::vector<double> fields;             // explicit values, if given
  std::optional<std::uint64_t> field_seed; // otherwise drawn Unif[-1,1] per seed
};

HamiltonianSpec parse_hamiltonian_config(std::string_view text);
PauliSum build_from_spec(const HamiltonianSpec& spec);

}  // namespace vqnhite
