#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vqnhite/bench.hpp"
#include "vqnhite/errors.hpp"
#include "vqnhite/rng.hpp"

namespace {

using namespace vqnhite;

// `--fields` accepts either comma-separated reals or a bare integer seed.
void parse_fields_argument(const std::string& value, RunConfig& config) {
  const bool is_integer =
      !value.empty() && value.find_first_not_of("0123456789") == std::string::npos;
  if (is_integer) {
    config.field_seed = std::stoull(value);
    return;
  }
  std::vector<double> fields;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) fields.push_back(std::stod(item));
  if (fields.empty()) throw CLI::ValidationError("--fields", "no field values parsed");
  config.fields = std::move(fields);
}

void load_hamiltonian_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--ham", "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const HamiltonianSpec spec = parse_hamiltonian_config(buffer.str());
  config.n_qubits = spec.n;
  config.j = spec.j;
  config.fields.reset();
  config.field_seed.reset();
  if (!spec.fields.empty()) config.fields = spec.fields;
  if (spec.field_seed) config.field_seed = spec.field_seed;
}

void add_run_options(CLI::App* cmd, RunConfig& config, std::string& fields_arg,
                     std::string& ham_path, std::string& layout, std::string& entangler,
                     std::string& method, std::string& mode, std::string& target) {
  cmd->add_option("--n-qubits", config.n_qubits, "system size")->check(CLI::Range(1, 12));
  cmd->add_option("--j", config.j, "exchange coupling");
  cmd->add_option("--fields", fields_arg, "comma-separated field values, or an integer seed");
  cmd->add_option("--ham", ham_path, "plain-text Hamiltonian config file (n, J, fields)");
  cmd->add_option("--ansatz", layout, "circuit layout: nn | all");
  cmd->add_option("--depth", config.depth, "entangling blocks before the closing rotation layer");
  cmd->add_option("--entangler", entangler, "two-qubit gate: cz | cnot");
  cmd->add_option("--dbeta", config.dbeta, "imaginary-time step");
  cmd->add_option("--beta-max", config.beta_max, "imaginary-time horizon");
  cmd->add_option("--method", method, "vite | vqnhite | both");
  cmd->add_option("--samples", config.samples, "number of network-initialization seeds");
  cmd->add_option("--seed", config.master_seed, "master seed");
  cmd->add_option("--init-iters", config.init_iters, "gradient-descent iterations at beta = dbeta");
  cmd->add_option("--lr", config.lr, "initialization learning rate");
  cmd->add_option("--ridge", config.ridge, "metric regularization");
  cmd->add_option("--mode", mode, "expectation evaluation: exact | hadamard");
  cmd->add_option("--shots", config.shots, "samples per ancilla circuit (0 = exact)");
  cmd->add_option("--out", config.out, "output path prefix");
  cmd->add_option("--workers", config.workers, "parallel sample workers");
  cmd->add_option("--target", target, "initialization target: exact | taylor");
}

void finalize_config(RunConfig& config, const std::string& fields_arg,
                     const std::string& ham_path, const std::string& layout,
                     const std::string& entangler, const std::string& method,
                     const std::string& mode, const std::string& target) {
  if (!ham_path.empty()) load_hamiltonian_file(ham_path, config);
  if (!fields_arg.empty()) parse_fields_argument(fields_arg, config);
  config.layout = ansatz_layout_from_name(layout);
  config.entangler = entangler_from_name(entangler);
  config.method = method_from_name(method);
  if (mode == "exact") {
    config.mode = ExpectationMode::Exact;
  } else if (mode == "hadamard") {
    config.mode = ExpectationMode::Hadamard;
  } else {
    throw CLI::ValidationError("--mode", "expected exact or hadamard");
  }
  if (target == "exact") {
    config.init_target = VqnhiteOptions::InitTarget::ExactIte;
  } else if (target == "taylor") {
    config.init_target = VqnhiteOptions::InitTarget::TaylorPauli;
  } else {
    throw CLI::ValidationError("--target", "expected exact or taylor");
  }
  config.validate();
}

int run_evolve(const RunConfig& config, const std::string& snapshot_path) {
  const std::vector<double> fields = config.resolve_fields();
  const PauliSum hamiltonian = build_heisenberg(config.n_qubits, config.j, fields);
  const StateVector psi0 = initial_plus_state(config.n_qubits);
  const AnsatzCircuit ansatz =
      AnsatzCircuit::make(config.layout, config.n_qubits, config.depth, config.entangler);

  EvolutionConfig evolution;
  evolution.dbeta = config.dbeta;
  evolution.beta_max = config.beta_max;
  evolution.ridge = config.ridge;
  evolution.mode = config.mode;
  evolution.shots = config.shots;
  evolution.seed = config.master_seed;

  FidelityTrace trace;
  if (config.method != Method::Vqnhite) {
    const FidelityTrace vite = vite_evolve(evolution, ansatz, hamiltonian, psi0);
    trace.records.insert(trace.records.end(), vite.records.begin(), vite.records.end());
  }
  if (config.method != Method::Vite) {
    VqnhiteOptions options;
    options.init_iters = config.init_iters;
    options.lr = config.lr;
    options.init_target = config.init_target;
    std::ofstream snapshots;
    if (!snapshot_path.empty()) {
      snapshots.open(snapshot_path);
      if (!snapshots) throw std::runtime_error("cannot write " + snapshot_path);
      options.snapshot_sink = [&snapshots](double beta, const HybridParams& params) {
        snapshots << beta;
        for (double v : params.flatten()) {
          char buffer[32];
          std::snprintf(buffer, sizeof(buffer), ",%.17g", v);
          snapshots << buffer;
        }
        snapshots << '\n';
      };
    }
    const FidelityTrace hybrid =
        vqnhite_evolve(evolution, ansatz, hamiltonian, psi0, config.master_seed, options);
    trace.records.insert(trace.records.end(), hybrid.records.begin(), hybrid.records.end());
  }

  for (const auto& record : trace.records) {
    std::printf("beta=%-8.4g method=%-8s fidelity=%.10f energy=%+.10f\n", record.beta,
                record.method.c_str(), record.fidelity, record.energy);
  }
  if (!config.out.empty()) {
    write_trace_csv(trace, config.out + ".csv");
    std::printf("wrote %s.csv\n", config.out.c_str());
  }
  return 0;
}

int run_benchmark_command(const RunConfig& config) {
  const BenchmarkResult result = run_benchmark(config);
  for (const auto& row : summarize(result.trace)) {
    std::printf("beta=%-8.4g method=%-8s mean_fidelity=%.6f se=%.6f (n=%d)\n", row.beta,
                row.method.c_str(), row.mean_fidelity, row.se_fidelity, row.count);
  }
  std::printf("data:    %s\nsummary: %s\nconfig:  %s\n", result.data_path.c_str(),
              result.summary_path.c_str(), result.config_path.c_str());
  if (result.failed > 0) {
    std::fprintf(stderr, "%d of %d jobs failed\n", result.failed, result.total);
  }
  return result.too_many_failures() ? 1 : 0;
}

int run_verify(const std::string& suite) {
  const auto checks = verify_suite(suite);
  int failures = 0;
  for (const auto& check : checks) {
    std::printf("[%s] %s (tolerance %.3g, observed %.3g)\n", check.pass ? "PASS" : "FAIL",
                check.name.c_str(), check.tolerance, check.observed);
    if (!check.pass) ++failures;
  }
  std::printf("%zu checks, %d failures\n", checks.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"State-vector benchmarks for neural-augmented variational imaginary-time evolution"};
  app.require_subcommand(1);

  RunConfig config;
  std::string fields_arg;
  std::string ham_path;
  std::string layout = "nn";
  std::string entangler = "cz";
  std::string method = "both";
  std::string mode = "exact";
  std::string target = "exact";
  std::string snapshot_path;

  CLI::App* evolve = app.add_subcommand("evolve", "run one trajectory and print the trace");
  add_run_options(evolve, config, fields_arg, ham_path, layout, entangler, method, mode, target);
  evolve->add_option("--snapshot-out", snapshot_path,
                     "write per-beta parameter snapshots (vqnhite only)");

  CLI::App* benchmark =
      app.add_subcommand("benchmark", "run the multi-seed comparison and persist results");
  add_run_options(benchmark, config, fields_arg, ham_path, layout, entangler, method, mode,
                  target);

  std::string plot_in;
  std::string plot_out = "fidelity.svg";
  CLI::App* plot = app.add_subcommand("plot", "render a fidelity-vs-beta figure from a trace");
  plot->add_option("trace", plot_in, "trace CSV produced by evolve/benchmark")->required();
  plot->add_option("--out", plot_out, "output SVG path");

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "gradients | oracles | hadamard | convergence")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) {
      finalize_config(config, fields_arg, ham_path, layout, entangler, method, mode, target);
      return run_evolve(config, snapshot_path);
    }
    if (benchmark->parsed()) {
      finalize_config(config, fields_arg, ham_path, layout, entangler, method, mode, target);
      return run_benchmark_command(config);
    }
    if (plot->parsed()) {
      emit_plot(plot_in, plot_out);
      std::printf("wrote %s\n", plot_out.c_str());
      return 0;
    }
    if (verify->parsed()) return run_verify(suite);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
