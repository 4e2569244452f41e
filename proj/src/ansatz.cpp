#include "vqnhite/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vqnhite {

AnsatzLayout ansatz_layout_from_name(const std::string& name) {
  if (name == "nn" || name == "nearest-neighbor") return AnsatzLayout::NearestNeighbor;
  if (name == "all" || name == "all-to-all") return AnsatzLayout::AllToAll;
  throw std::invalid_argument("unknown ansatz layout: " + name);
}

std::string ansatz_layout_name(AnsatzLayout layout) {
  return layout == AnsatzLayout::NearestNeighbor ? "nn" : "all";
}

EntanglerKind entangler_from_name(const std::string& name) {
  if (name == "cz") return EntanglerKind::CZ;
  if (name == "cnot") return EntanglerKind::CNOT;
  throw std::invalid_argument("unknown entangler: " + name);
}

std::string entangler_name(EntanglerKind kind) {
  return kind == EntanglerKind::CZ ? "cz" : "cnot";
}

AnsatzCircuit AnsatzCircuit::make(AnsatzLayout layout, int n_qubits, int depth,
                                  EntanglerKind entangler) {
  if (n_qubits < 1) throw std::invalid_argument("ansatz: need at least one qubit");
  if (depth < 0) throw std::invalid_argument("ansatz: depth must be nonnegative");
  AnsatzCircuit ansatz;
  ansatz.layout_ = layout;
  ansatz.entangler_ = entangler;
  ansatz.n_qubits_ = n_qubits;
  ansatz.depth_ = depth;
  int param = 0;
  const auto rotation_layer = [&] {
    for (int q = 0; q < n_qubits; ++q)
      ansatz.gates_.push_back({Gate::Kind::Rotation, q, -1, param++});
  };
  const auto entangler_layer = [&] {
    if (layout == AnsatzLayout::NearestNeighbor) {
      for (int q = 0; q + 1 < n_qubits; ++q)
        ansatz.gates_.push_back({Gate::Kind::Entangler, q, q + 1, -1});
    } else {
      for (int a = 0; a < n_qubits; ++a)
        for (int b = a + 1; b < n_qubits; ++b)
          ansatz.gates_.push_back({Gate::Kind::Entangler, a, b, -1});
    }
  };
  for (int d = 0; d < depth; ++d) {
    rotation_layer();
    entangler_layer();
  }
  rotation_layer();
  ansatz.n_params_ = param;
  return ansatz;
}

std::vector<DerivativeTerm> AnsatzCircuit::derivative_terms(int param_index) const {
  const int q = rotation_qubit(param_index);
  return {{0.5, -std::numbers::pi / 2.0, PauliString::single(n_qubits_, q, Pauli::Y)}};
}

int AnsatzCircuit::rotation_qubit(int param_index) const {
  if (param_index < 0 || param_index >= n_params_)
    throw std::invalid_argument("parameter index out of range");
  for (const auto& g : gates_) {
    if (g.kind == Gate::Kind::Rotation && g.param == param_index) return g.qubit;
  }
  throw std::logic_error("rotation for parameter not found");
}

namespace {

void apply_gate(const AnsatzCircuit& ansatz, const Gate& g,
                const std::vector<double>& theta, StateVector& psi) {
  if (g.kind == Gate::Kind::Rotation) {
    apply_ry(psi, g.qubit, theta[static_cast<std::size_t>(g.param)]);
  } else if (ansatz.entangler() == EntanglerKind::CZ) {
    apply_cz(psi, g.qubit, g.qubit2);
  } else {
    apply_cnot(psi, g.qubit, g.qubit2);
  }
}

void check_run_args(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                    const StateVector& input) {
  if (static_cast<int>(theta.size()) != ansatz.n_params())
    throw std::invalid_argument("run_circuit: parameter vector length mismatch");
  if (input.n_qubits != ansatz.n_qubits())
    throw std::invalid_argument("run_circuit: qubit count mismatch");
}

}  // namespace

StateVector run_circuit(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                        const StateVector& input) {
  check_run_args(ansatz, theta, input);
  StateVector psi = input;
  for (const auto& g : ansatz.gates()) apply_gate(ansatz, g, theta, psi);
  return psi;
}

StateVector run_circuit_with_insertion(const AnsatzCircuit& ansatz,
                                       const std::vector<double>& theta, int param_index,
                                       const PauliString& generator,
                                       const StateVector& input) {
  check_run_args(ansatz, theta, input);
  if (param_index < 0 || param_index >= ansatz.n_params())
    throw std::invalid_argument("parameter index out of range");
  StateVector psi = input;
  for (const auto& g : ansatz.gates()) {
    if (g.kind == Gate::Kind::Rotation && g.param == param_index)
      apply_pauli_inplace(psi, generator);
    apply_gate(ansatz, g, theta, psi);
  }
  return psi;
}

std::vector<std::pair<Complex, StateVector>> derivative_states(
    const AnsatzCircuit& ansatz, const std::vector<double>& theta, int param_index,
    const StateVector& input) {
  std::vector<std::pair<Complex, StateVector>> out;
  for (const auto& term : ansatz.derivative_terms(param_index)) {
    out.emplace_back(term.coeff(), run_circuit_with_insertion(ansatz, theta, param_index,
                                                              term.generator, input));
  }
  return out;
}

StateVector assembled_derivative(const AnsatzCircuit& ansatz,
                                 const std::vector<double>& theta, int param_index,
                                 const StateVector& input) {
  StateVector total(ansatz.n_qubits());
  for (const auto& [coeff, state] : derivative_states(ansatz, theta, param_index, input)) {
    for (std::size_t i = 0; i < total.dim(); ++i) total.amps[i] += coeff * state.amps[i];
  }
  return total;
}

}  // namespace vqnhite
