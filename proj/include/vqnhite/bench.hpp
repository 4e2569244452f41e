#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqnhite/ansatz.hpp"
#include "vqnhite/hybrid.hpp"
#include "vqnhite/pauli.hpp"
#include "vqnhite/trace.hpp"
#include "vqnhite/vite.hpp"

namespace vqnhite {

inline constexpr const char* kCodeVersion = "0.1.0";

enum class Method { Vite, Vqnhite, Both };

Method method_from_name(const std::string& name);
std::string method_name(Method m);

struct RunConfig {
  int n_qubits = 6;
  double j = -1.0;
  std::optional<std::vector<double>> fields;  // explicit values
  std::optional<std::uint64_t> field_seed;    // otherwise Unif[-1,1] per seed
  AnsatzLayout layout = AnsatzLayout::NearestNeighbor;
  int depth = 2;
  EntanglerKind entangler = EntanglerKind::CZ;
  double dbeta = 0.1;
  double beta_max = 6.0;
  Method method = Method::Both;
  int samples = 20;
  std::uint64_t master_seed = 1;
  int init_iters = 50;
  double lr = 0.1;
  double ridge = 1e-5;
  ExpectationMode mode = ExpectationMode::Exact;
  int shots = 0;
  std::string out = "trace";
  int workers = 1;
  VqnhiteOptions::InitTarget init_target = VqnhiteOptions::InitTarget::ExactIte;

  void validate() const;
  std::vector<double> resolve_fields() const;
  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

// n i.i.d. Unif[-1,1] field values, reproducible per seed.
std::vector<double> sample_fields(std::uint64_t seed, int n);

struct SampleStatus {
  int sample = 0;
  std::string method;
  bool ok = true;
  std::string error;
};

struct BenchmarkResult {
  FidelityTrace trace;
  std::vector<SampleStatus> statuses;
  int failed = 0;
  int total = 0;
  std::string data_path;
  std::string summary_path;
  std::string config_path;

  bool too_many_failures() const { return total > 0 && failed * 10 > total; }
};

// Runs the configured methods over `samples` network seeds against one shared
// Hamiltonian instance, persists raw records, a per-beta summary, and the
// config snapshot. Per-sample failures are recorded and skipped.
BenchmarkResult run_benchmark(const RunConfig& config);

struct SummaryRow {
  std::string method;
  double beta = 0.0;
  int count = 0;
  double mean_fidelity = 0.0;
  double se_fidelity = 0.0;
  double mean_energy = 0.0;
  double se_energy = 0.0;
};

std::vector<SummaryRow> summarize(const FidelityTrace& trace);

void write_trace_csv(const FidelityTrace& trace, const std::string& path);
FidelityTrace read_trace_csv(const std::string& path);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);

// Fidelity-versus-beta figure with per-method mean curves and standard-error
// bars, written as SVG.
void emit_plot(const std::string& trace_csv_path, const std::string& svg_path);

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

// Named invariant suites driven by the `verify` subcommand:
// gradients | oracles | hadamard | convergence.
std::vector<CheckResult> verify_suite(const std::string& suite);

}  // namespace vqnhite
