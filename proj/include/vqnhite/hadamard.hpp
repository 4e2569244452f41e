#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vqnhite/ansatz.hpp"
#include "vqnhite/neural.hpp"
#include "vqnhite/pauli.hpp"
#include "vqnhite/rng.hpp"
#include "vqnhite/statevector.hpp"

namespace vqnhite {

enum class AncillaBasis { X, Y };

// Operations applicable to one ancilla branch of the register.
struct OpCircuit {
  AnsatzCircuit ansatz;
  std::vector<double> theta;
  int insert_param = -1;         // >= 0: insert `insert_generator` before that rotation
  PauliString insert_generator;
};
struct OpPauli {
  PauliString pauli;
};
struct OpUnitary {
  Eigen::MatrixXcd matrix;
};
using JobOp = std::variant<OpCircuit, OpPauli, OpUnitary>;

struct ControlledOp {
  int control = -1;  // -1: unconditional, 0/1: applied when the ancilla is |0>/|1>
  JobOp op;
};

// Basis-change unitary for a non-diagonal Pauli string: measuring after V in
// the computational basis resolves the +-1 eigenspaces. Outcome (0, rest)
// belongs to eigenstate |+, rest>, outcome (1, rest~) to |-, rest>.
struct MeasurementBasisV {
  PauliString pauli;
  int pivot = 0;                // first qubit carrying X or Y
  std::uint64_t flip_mask = 0;  // bit flips induced by the string
  Eigen::MatrixXcd v;
  std::vector<Complex> phase_table;  // phase_table[s]: P|s> = phase_table[s] |s ^ flip_mask>

  // Maps a post-V measurement outcome to (sign, eigenstate label with pivot bit 0).
  std::pair<int, std::uint64_t> outcome_to_eigenlabel(std::uint64_t outcome) const;
};

MeasurementBasisV build_V(const PauliString& p);

void apply_dense(StateVector& psi, const Eigen::MatrixXcd& u);

// One ancilla-assisted estimation circuit over n_system + 1 qubits. The
// ancilla starts in (|0> + e^{i phase}|1>)/sqrt(2), listed operations run on
// their branch, optionally V rotates the system, then the ancilla is read in
// the X or Y basis. shots = 0 yields the exact expectation.
struct AncillaJob {
  int n_system = 0;
  double phase = 0.0;
  StateVector system_initial;
  std::vector<ControlledOp> ops;
  std::optional<MeasurementBasisV> post_v;
  AncillaBasis basis = AncillaBasis::X;
  int shots = 0;
  std::uint64_t seed = 0;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct ComplexEstimate {
  Complex value{0.0, 0.0};
  double std_error_real = 0.0;
  double std_error_imag = 0.0;
};

// Expectation of the ancilla readout alone.
Estimate hadamard_test(const AncillaJob& job);

// Expectation of (ancilla readout) * weight(system outcome). The weight sees
// the raw post-V computational-basis outcome.
Estimate hadamard_test_weighted(const AncillaJob& job,
                                const std::function<double(std::uint64_t)>& weight);

// The full (n_system + 1)-qubit register the job prepares, ancilla as qubit 0.
StateVector assemble_register(const AncillaJob& job);

// Computational-basis estimate of sum_s weight(s) |psi_s|^2 (diagonal
// observables and norms of f-modified states).
Estimate sampled_diagonal_expectation(const StateVector& psi,
                                      const std::function<double(std::uint64_t)>& weight,
                                      int shots, std::uint64_t seed);

struct PmRow {
  std::uint64_t label = 0;  // eigenstate label, pivot bit 0
  double p_plus = 0.0;
  double p_minus = 0.0;
};

// Probability table |<+,s|psi>|^2, |<-,s|psi>|^2 via the V circuit.
std::vector<PmRow> estimate_pm_probs(const StateVector& psi, const PauliString& p,
                                     int shots, std::uint64_t seed = 0);

// <phi~| P |phi~> for non-diagonal P through the V-circuit route, with NN
// post-processing f(s) f(s~). nn = nullptr means f = 1.
Estimate nondiagonal_expectation(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                                 const MlpParams* nn, const PauliString& p,
                                 const StateVector& input, int shots, std::uint64_t seed = 0);

struct EstimatorOptions {
  int shots = 0;
  std::uint64_t seed = 0;
};

// Ancilla-circuit matrix elements backing the hybrid metric, force, and
// initialization overlaps. Weight functions take bitstring indices.
//
// sum_l r_{j,l} sum_s w(s) Re(e^{i phase_{j,l}} <phi(theta)|s><s| U_{j,l} |0bar>)
Estimate fig5a1(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                const std::function<double(std::uint64_t)>& weight, const StateVector& input,
                const EstimatorOptions& opt = {});

// V-resolved force element for a non-diagonal Pauli string:
// sum_l r_{j,l} sum_{s0=0} [Re(e^{i phase} phi+) - Re(e^{i phase} phi-)] * pair_weight(s, s~)
Estimate fig5a2(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                const PauliString& p,
                const std::function<double(std::uint64_t, std::uint64_t)>& pair_weight,
                const StateVector& input, const EstimatorOptions& opt = {});

// sum_{l1,l2} r_{j,l1} r_{k,l2} sum_s w(s)
//   Re(e^{i(phase_{k,l2}-phase_{j,l1})} <0bar| U+_{j,l1} |s><s| U_{k,l2} |0bar>)
Estimate fig5b(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j, int k,
               const std::function<double(std::uint64_t)>& weight, const StateVector& input,
               const EstimatorOptions& opt = {});

// sum_t e_t sum_s w(s) <0bar| P_t |s><s|phi(theta)>, both quadratures.
ComplexEstimate fig5c(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                      const PauliSum& op, const std::function<double(std::uint64_t)>& weight,
                      const StateVector& input, const EstimatorOptions& opt = {});

// sum_{t,l} e_t r_{j,l} sum_s w(s) e^{i phase_{j,l}} <0bar| P_t |s><s| U_{j,l} |0bar>.
ComplexEstimate fig5d(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                      const PauliSum& op, const std::function<double(std::uint64_t)>& weight,
                      const StateVector& input, const EstimatorOptions& opt = {});

enum class AppendixKind { Fig5a1, Fig5a2, Fig5b, Fig5c, Fig5d };

struct AppendixInputs {
  const AnsatzCircuit* ansatz = nullptr;
  std::vector<double> theta;
  StateVector input;
  int j = -1;
  int k = -1;
  const PauliString* pauli = nullptr;  // fig5a2
  const PauliSum* op = nullptr;        // fig5c / fig5d
  std::function<double(std::uint64_t)> weight;
  std::function<double(std::uint64_t, std::uint64_t)> pair_weight;  // fig5a2
  EstimatorOptions options;
};

ComplexEstimate appendix_element(AppendixKind kind, const AppendixInputs& inputs);

}  // namespace vqnhite
