#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vqnhite/bench.hpp"
#include "vqnhite/exact.hpp"
#include "vqnhite/hadamard.hpp"
#include "vqnhite/hybrid.hpp"
#include "vqnhite/oracles.hpp"

namespace py = pybind11;
using namespace vqnhite;

namespace {

StateVector state_from_amps(const std::vector<Complex>& amps) {
  int n = 0;
  while ((std::size_t(1) << n) < amps.size()) ++n;
  if ((std::size_t(1) << n) != amps.size())
    throw std::invalid_argument("amplitude count must be a power of two");
  StateVector psi(n);
  psi.amps = amps;
  return psi;
}

py::list trace_to_list(const FidelityTrace& trace) {
  py::list out;
  for (const auto& r : trace.records) {
    py::dict d;
    d["beta"] = r.beta;
    d["method"] = r.method;
    d["sample"] = r.sample;
    d["fidelity"] = r.fidelity;
    d["energy"] = r.energy;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_vqnhite, m) {
  m.doc() = "State-vector engines for neural-augmented variational imaginary-time evolution";
  m.attr("__version__") = kCodeVersion;

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<std::string_view>(), py::arg("letters"))
      .def_property_readonly("n_qubits", &PauliString::n_qubits)
      .def("is_diagonal", &PauliString::is_diagonal)
      .def("__str__", &PauliString::str)
      .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.str() + "')"; });

  py::class_<PauliSum>(m, "PauliSum")
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def("terms",
           [](const PauliSum& sum) {
             py::list out;
             for (const auto& t : sum.terms()) out.append(py::make_tuple(t.coeff, t.string.str()));
             return out;
           })
      .def("__len__", &PauliSum::size);

  m.def("build_heisenberg", &build_heisenberg, py::arg("n"), py::arg("j"), py::arg("fields"));
  m.def("taylor_ite_pauli", &taylor_ite_pauli, py::arg("hamiltonian"), py::arg("dbeta"),
        py::arg("order") = 2);
  m.def(
      "to_dense", [](const PauliSum& a) { return to_dense(a); }, py::arg("op"));
  m.def(
      "pauli_apply",
      [](const PauliString& p, std::uint64_t bits) {
        const auto r = pauli_apply(p, bits);
        return py::make_tuple(r.phase, r.bits);
      },
      py::arg("p"), py::arg("bits"));
  m.def(
      "pauli_mul",
      [](const PauliString& a, const PauliString& b) {
        const auto r = pauli_mul(a, b);
        return py::make_tuple(r.phase, r.string);
      },
      py::arg("a"), py::arg("b"));

  py::class_<StateVector>(m, "StateVector")
      .def(py::init(&state_from_amps), py::arg("amplitudes"))
      .def_readonly("n_qubits", &StateVector::n_qubits)
      .def_property_readonly("amplitudes", [](const StateVector& s) { return s.amps; })
      .def("norm", &StateVector::norm);

  m.def("initial_plus_state", &initial_plus_state, py::arg("n"));
  m.def("inner", &inner, py::arg("a"), py::arg("b"));
  m.def("apply_pauli", &apply_pauli, py::arg("p"), py::arg("psi"));
  m.def("exact_ite",
        py::overload_cast<const PauliSum&, const StateVector&, double>(&exact_ite),
        py::arg("hamiltonian"), py::arg("psi0"), py::arg("beta"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));

  py::class_<AnsatzCircuit>(m, "AnsatzCircuit")
      .def_static(
          "make",
          [](const std::string& layout, int n, int depth, const std::string& entangler) {
            return AnsatzCircuit::make(ansatz_layout_from_name(layout), n, depth,
                                       entangler_from_name(entangler));
          },
          py::arg("layout"), py::arg("n_qubits"), py::arg("depth") = 2,
          py::arg("entangler") = "cz")
      .def_property_readonly("n_params", &AnsatzCircuit::n_params)
      .def_property_readonly("n_qubits", &AnsatzCircuit::n_qubits);

  m.def("run_circuit", &run_circuit, py::arg("ansatz"), py::arg("theta"), py::arg("input"));

  py::class_<MlpParams>(m, "MlpParams")
      .def_static("zeros", &MlpParams::zeros, py::arg("n_qubits"))
      .def_static("random_init", &MlpParams::random_init, py::arg("seed"), py::arg("n_qubits"))
      .def_property_readonly("n_qubits", &MlpParams::n_qubits)
      .def("n_params", &MlpParams::n_params)
      .def("to_flat", &MlpParams::to_flat)
      .def_static(
          "from_flat",
          [](int n, const std::vector<double>& flat) {
            return MlpParams::from_flat(n, std::span<const double>(flat));
          },
          py::arg("n_qubits"), py::arg("flat"));

  m.def("nn_forward", &nn_forward, py::arg("params"), py::arg("bits"));
  m.def("nn_gradient", &nn_gradient, py::arg("params"), py::arg("bits"));
  m.def("apply_f", &apply_f, py::arg("params"), py::arg("psi"));

  py::class_<EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init<>())
      .def_readwrite("dbeta", &EvolutionConfig::dbeta)
      .def_readwrite("beta_max", &EvolutionConfig::beta_max)
      .def_readwrite("ridge", &EvolutionConfig::ridge)
      .def_readwrite("shots", &EvolutionConfig::shots)
      .def_readwrite("seed", &EvolutionConfig::seed);

  m.def("compute_M", &compute_M, py::arg("ansatz"), py::arg("theta"), py::arg("input"));
  m.def("compute_C", &compute_C, py::arg("ansatz"), py::arg("theta"), py::arg("hamiltonian"),
        py::arg("input"));
  m.def(
      "solve_update",
      [](const Eigen::MatrixXd& metric, const Eigen::VectorXd& force, double dbeta,
         double ridge) { return solve_update({metric, force}, dbeta, ridge); },
      py::arg("metric"), py::arg("force"), py::arg("dbeta"), py::arg("ridge") = 1e-6);

  m.def(
      "vite_evolve",
      [](const EvolutionConfig& config, const AnsatzCircuit& ansatz, const PauliSum& h,
         const StateVector& psi0) { return trace_to_list(vite_evolve(config, ansatz, h, psi0)); },
      py::arg("config"), py::arg("ansatz"), py::arg("hamiltonian"), py::arg("psi0"));

  m.def(
      "vqnhite_evolve",
      [](const EvolutionConfig& config, const AnsatzCircuit& ansatz, const PauliSum& h,
         const StateVector& psi0, std::uint64_t seed, int init_iters, double lr) {
        VqnhiteOptions options;
        options.init_iters = init_iters;
        options.lr = lr;
        return trace_to_list(vqnhite_evolve(config, ansatz, h, psi0, seed, options));
      },
      py::arg("config"), py::arg("ansatz"), py::arg("hamiltonian"), py::arg("psi0"),
      py::arg("seed"), py::arg("init_iters") = 50, py::arg("lr") = 0.1);

  m.def("hybrid_metric", &hybrid_metric, py::arg("ansatz"), py::arg("theta"), py::arg("nn"),
        py::arg("input"));
  m.def("hybrid_force", &hybrid_force, py::arg("ansatz"), py::arg("theta"), py::arg("nn"),
        py::arg("input"), py::arg("hamiltonian"));
  m.def("expectation_energy", &expectation_energy, py::arg("ansatz"), py::arg("theta"),
        py::arg("nn"), py::arg("input"), py::arg("hamiltonian"));
  m.def(
      "cost_F",
      [](const AnsatzCircuit& ansatz, const std::vector<double>& theta, const MlpParams& nn,
         const StateVector& input, const StateVector& target) {
        return cost_F(ansatz, theta, nn, input, target);
      },
      py::arg("ansatz"), py::arg("theta"), py::arg("nn"), py::arg("input"), py::arg("target"));

  m.def(
      "nondiagonal_expectation",
      [](const AnsatzCircuit& ansatz, const std::vector<double>& theta, const MlpParams& nn,
         const PauliString& p, const StateVector& input, int shots, std::uint64_t seed) {
        const Estimate est = nondiagonal_expectation(ansatz, theta, &nn, p, input, shots, seed);
        return py::make_tuple(est.value, est.std_error);
      },
      py::arg("ansatz"), py::arg("theta"), py::arg("nn"), py::arg("p"), py::arg("input"),
      py::arg("shots") = 0, py::arg("seed") = 0);

  m.def("sample_fields", &sample_fields, py::arg("seed"), py::arg("n"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("n_qubits", &RunConfig::n_qubits)
      .def_readwrite("j", &RunConfig::j)
      .def_readwrite("fields", &RunConfig::fields)
      .def_readwrite("field_seed", &RunConfig::field_seed)
      .def_readwrite("depth", &RunConfig::depth)
      .def_readwrite("dbeta", &RunConfig::dbeta)
      .def_readwrite("beta_max", &RunConfig::beta_max)
      .def_readwrite("samples", &RunConfig::samples)
      .def_readwrite("master_seed", &RunConfig::master_seed)
      .def_readwrite("init_iters", &RunConfig::init_iters)
      .def_readwrite("lr", &RunConfig::lr)
      .def_readwrite("ridge", &RunConfig::ridge)
      .def_readwrite("shots", &RunConfig::shots)
      .def_readwrite("out", &RunConfig::out)
      .def_readwrite("workers", &RunConfig::workers)
      .def_property(
          "layout",
          [](const RunConfig& c) { return ansatz_layout_name(c.layout); },
          [](RunConfig& c, const std::string& v) { c.layout = ansatz_layout_from_name(v); })
      .def_property(
          "method", [](const RunConfig& c) { return method_name(c.method); },
          [](RunConfig& c, const std::string& v) { c.method = method_from_name(v); });

  m.def(
      "run_benchmark",
      [](const RunConfig& config) {
        const BenchmarkResult result = run_benchmark(config);
        py::dict out;
        out["records"] = trace_to_list(result.trace);
        out["failed"] = result.failed;
        out["total"] = result.total;
        out["data_path"] = result.data_path;
        out["summary_path"] = result.summary_path;
        out["config_path"] = result.config_path;
        return out;
      },
      py::arg("config"));

  m.def("emit_plot", &emit_plot, py::arg("trace_csv"), py::arg("svg_path"));
  m.def(
      "verify_suite",
      [](const std::string& suite) {
        py::list out;
        for (const auto& check : verify_suite(suite)) {
          py::dict d;
          d["name"] = check.name;
          d["tolerance"] = check.tolerance;
          d["observed"] = check.observed;
          d["pass"] = check.pass;
          out.append(d);
        }
        return out;
      },
      py::arg("suite"));
}
