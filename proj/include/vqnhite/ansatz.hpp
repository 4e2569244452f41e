#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vqnhite/pauli.hpp"
#include "vqnhite/statevector.hpp"

namespace vqnhite {

enum class AnsatzLayout { NearestNeighbor, AllToAll };
enum class EntanglerKind { CZ, CNOT };

AnsatzLayout ansatz_layout_from_name(const std::string& name);  // "nn" | "all"
std::string ansatz_layout_name(AnsatzLayout layout);
EntanglerKind entangler_from_name(const std::string& name);     // "cz" | "cnot"
std::string entangler_name(EntanglerKind kind);

struct Gate {
  enum class Kind { Rotation, Entangler };
  Kind kind;
  int qubit = 0;        // rotation target, or entangler first qubit
  int qubit2 = -1;      // entangler second qubit
  int param = -1;       // rotation parameter index (0-based)
};

// One summand of the gate-derivative decomposition
//   dU_j/dtheta_j = sum_k a_{j,k} U_j u_{j,k},  a_{j,k} = r_{j,k} exp(i phase_{j,k}).
struct DerivativeTerm {
  double r;
  double phase;
  PauliString generator;

  Complex coeff() const { return r * Complex(std::cos(phase), std::sin(phase)); }
};

// Hardware-efficient circuit: `depth` blocks of (RY layer, entangler layer)
// followed by a closing RY layer. Parameters are indexed in application order.
class AnsatzCircuit {
 public:
  static AnsatzCircuit make(AnsatzLayout layout, int n_qubits, int depth = 2,
                            EntanglerKind entangler = EntanglerKind::CZ);

  AnsatzLayout layout() const { return layout_; }
  EntanglerKind entangler() const { return entangler_; }
  int n_qubits() const { return n_qubits_; }
  int depth() const { return depth_; }
  int n_params() const { return n_params_; }
  const std::vector<Gate>& gates() const { return gates_; }

  // Derivative decomposition of the rotation carrying parameter j. A single
  // RY rotation has exactly one term with r = 1/2, phase = -pi/2 (a = -i/2)
  // and generator Y on the rotated qubit.
  std::vector<DerivativeTerm> derivative_terms(int param_index) const;

  int rotation_qubit(int param_index) const;

 private:
  AnsatzLayout layout_ = AnsatzLayout::NearestNeighbor;
  EntanglerKind entangler_ = EntanglerKind::CZ;
  int n_qubits_ = 0;
  int depth_ = 0;
  int n_params_ = 0;
  std::vector<Gate> gates_;
};

// U(theta) |input>.
StateVector run_circuit(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                        const StateVector& input);

// Circuit run with one extra unitary inserted immediately before the rotation
// carrying parameter j. With `generator` from derivative_terms this prepares
// the unit-norm derivative-circuit state.
StateVector run_circuit_with_insertion(const AnsatzCircuit& ansatz,
                                       const std::vector<double>& theta, int param_index,
                                       const PauliString& generator,
                                       const StateVector& input);

// All (coefficient, state) pairs whose weighted sum is d|phi(theta)>/dtheta_j.
std::vector<std::pair<Complex, StateVector>> derivative_states(
    const AnsatzCircuit& ansatz, const std::vector<double>& theta, int param_index,
    const StateVector& input);

// The assembled derivative d|phi(theta)>/dtheta_j (generally unnormalized).
StateVector assembled_derivative(const AnsatzCircuit& ansatz,
                                 const std::vector<double>& theta, int param_index,
                                 const StateVector& input);

}  // namespace vqnhite
