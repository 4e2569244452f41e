#include "vqnhite/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vqnhite/errors.hpp"
#include "vqnhite/exact.hpp"
#include "vqnhite/rng.hpp"

namespace vqnhite {

using nlohmann::json;

Method method_from_name(const std::string& name) {
  if (name == "vite") return Method::Vite;
  if (name == "vqnhite") return Method::Vqnhite;
  if (name == "both") return Method::Both;
  throw std::invalid_argument("unknown method: " + name);
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Vite: return "vite";
    case Method::Vqnhite: return "vqnhite";
    case Method::Both: return "both";
  }
  return "both";
}

void RunConfig::validate() const {
  if (n_qubits < 1 || n_qubits > kDefaultDenseLimit)
    throw std::invalid_argument("config: n_qubits out of range");
  if (fields && static_cast<int>(fields->size()) != n_qubits)
    throw std::invalid_argument("config: field vector length must equal n_qubits");
  if (depth < 0) throw std::invalid_argument("config: depth must be nonnegative");
  if (!(dbeta > 0.0)) throw std::invalid_argument("config: dbeta must be positive");
  if (beta_max < dbeta) throw std::invalid_argument("config: beta_max must be >= dbeta");
  if (samples < 1) throw std::invalid_argument("config: samples must be positive");
  if (init_iters < 0) throw std::invalid_argument("config: init_iters must be nonnegative");
  if (!(lr > 0.0)) throw std::invalid_argument("config: learning rate must be positive");
  if (ridge < 0.0) throw std::invalid_argument("config: ridge must be nonnegative");
  if (shots < 0) throw std::invalid_argument("config: shots must be nonnegative");
  if (workers < 1) throw std::invalid_argument("config: workers must be positive");
  if (mode == ExpectationMode::Hadamard && method != Method::Vite)
    throw std::invalid_argument(
        "config: hadamard expectation mode is available for method=vite only");
}

std::vector<double> RunConfig::resolve_fields() const {
  if (fields) return *fields;
  if (field_seed) return uniform_fields(*field_seed, n_qubits);
  return std::vector<double>(static_cast<std::size_t>(n_qubits), 0.0);
}

std::string RunConfig::to_json() const {
  json j;
  j["n_qubits"] = n_qubits;
  j["J"] = this->j;
  if (fields) j["fields"] = *fields;
  if (field_seed) j["field_seed"] = *field_seed;
  j["ansatz"] = ansatz_layout_name(layout);
  j["depth"] = depth;
  j["entangler"] = entangler_name(entangler);
  j["dbeta"] = dbeta;
  j["beta_max"] = beta_max;
  j["method"] = method_name(method);
  j["samples"] = samples;
  j["seed"] = master_seed;
  j["init_iters"] = init_iters;
  j["lr"] = lr;
  j["ridge"] = ridge;
  j["mode"] = mode == ExpectationMode::Exact ? "exact" : "hadamard";
  j["shots"] = shots;
  j["out"] = out;
  j["workers"] = workers;
  j["init_target"] =
      init_target == VqnhiteOptions::InitTarget::ExactIte ? "exact" : "taylor";
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunConfig c;
  c.n_qubits = j.at("n_qubits").get<int>();
  c.j = j.at("J").get<double>();
  if (j.contains("fields")) c.fields = j.at("fields").get<std::vector<double>>();
  if (j.contains("field_seed")) c.field_seed = j.at("field_seed").get<std::uint64_t>();
  c.layout = ansatz_layout_from_name(j.at("ansatz").get<std::string>());
  c.depth = j.at("depth").get<int>();
  c.entangler = entangler_from_name(j.at("entangler").get<std::string>());
  c.dbeta = j.at("dbeta").get<double>();
  c.beta_max = j.at("beta_max").get<double>();
  c.method = method_from_name(j.at("method").get<std::string>());
  c.samples = j.at("samples").get<int>();
  c.master_seed = j.at("seed").get<std::uint64_t>();
  c.init_iters = j.at("init_iters").get<int>();
  c.lr = j.at("lr").get<double>();
  c.ridge = j.at("ridge").get<double>();
  c.mode = j.at("mode").get<std::string>() == "exact" ? ExpectationMode::Exact
                                                      : ExpectationMode::Hadamard;
  c.shots = j.at("shots").get<int>();
  c.out = j.at("out").get<std::string>();
  c.workers = j.at("workers").get<int>();
  c.init_target = j.at("init_target").get<std::string>() == "taylor"
                      ? VqnhiteOptions::InitTarget::TaylorPauli
                      : VqnhiteOptions::InitTarget::ExactIte;
  return c;
}

std::vector<double> sample_fields(std::uint64_t seed, int n) {
  return uniform_fields(seed, n);
}

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

EvolutionConfig evolution_config(const RunConfig& config) {
  EvolutionConfig e;
  e.dbeta = config.dbeta;
  e.beta_max = config.beta_max;
  e.ridge = config.ridge;
  e.mode = config.mode;
  e.shots = config.shots;
  return e;
}

}  // namespace

BenchmarkResult run_benchmark(const RunConfig& config) {
  config.validate();
  const std::vector<double> fields = config.resolve_fields();
  const PauliSum hamiltonian = build_heisenberg(config.n_qubits, config.j, fields);
  const StateVector psi0 = initial_plus_state(config.n_qubits);
  // Both methods share this one circuit (same layout, depth, entangler).
  const AnsatzCircuit ansatz =
      AnsatzCircuit::make(config.layout, config.n_qubits, config.depth, config.entangler);

  const bool run_vite = config.method != Method::Vqnhite;
  const bool run_vqnhite = config.method != Method::Vite;

  std::vector<std::uint64_t> sample_seeds(static_cast<std::size_t>(config.samples));
  for (int i = 0; i < config.samples; ++i)
    sample_seeds[static_cast<std::size_t>(i)] =
        derive_seed(config.master_seed, static_cast<std::uint64_t>(i));

  BenchmarkResult result;

  // The baseline has no per-sample randomness in exact mode: compute it once
  // and replicate the records per sample id.
  FidelityTrace shared_vite;
  bool shared_vite_ok = false;
  std::string shared_vite_error;
  const bool vite_is_shared = run_vite && config.mode == ExpectationMode::Exact;
  if (vite_is_shared) {
    try {
      shared_vite = vite_evolve(evolution_config(config), ansatz, hamiltonian, psi0);
      shared_vite_ok = true;
    } catch (const std::exception& e) {
      shared_vite_error = e.what();
    }
  }

  struct SampleOutcome {
    FidelityTrace vite;
    FidelityTrace vqnhite;
    bool vite_ok = true;
    bool vqnhite_ok = true;
    std::string vite_error;
    std::string vqnhite_error;
  };
  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(config.samples));

  const auto run_sample = [&](int i) {
    SampleOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    if (run_vite && !vite_is_shared) {
      try {
        EvolutionConfig e = evolution_config(config);
        e.seed = sample_seeds[static_cast<std::size_t>(i)];
        outcome.vite = vite_evolve(e, ansatz, hamiltonian, psi0);
      } catch (const std::exception& ex) {
        outcome.vite_ok = false;
        outcome.vite_error = ex.what();
      }
    }
    if (run_vqnhite) {
      try {
        VqnhiteOptions options;
        options.init_iters = config.init_iters;
        options.lr = config.lr;
        options.init_target = config.init_target;
        outcome.vqnhite = vqnhite_evolve(evolution_config(config), ansatz, hamiltonian, psi0,
                                         sample_seeds[static_cast<std::size_t>(i)], options);
      } catch (const std::exception& ex) {
        outcome.vqnhite_ok = false;
        outcome.vqnhite_error = ex.what();
      }
    }
  };

  const int workers = std::min(config.workers, config.samples);
  if (workers <= 1) {
    for (int i = 0; i < config.samples; ++i) run_sample(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < config.samples; i = next.fetch_add(1))
          run_sample(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic merge in sample order, baseline records first per sample.
  for (int i = 0; i < config.samples; ++i) {
    const SampleOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
    if (run_vite) {
      const bool ok = vite_is_shared ? shared_vite_ok : outcome.vite_ok;
      const FidelityTrace& source = vite_is_shared ? shared_vite : outcome.vite;
      const std::string& error = vite_is_shared ? shared_vite_error : outcome.vite_error;
      result.statuses.push_back({i, "vite", ok, error});
      ++result.total;
      if (ok) {
        for (TraceRecord record : source.records) {
          record.sample = i;
          result.trace.records.push_back(std::move(record));
        }
      } else {
        ++result.failed;
      }
    }
    if (run_vqnhite) {
      result.statuses.push_back({i, "vqnhite", outcome.vqnhite_ok, outcome.vqnhite_error});
      ++result.total;
      if (outcome.vqnhite_ok) {
        for (TraceRecord record : outcome.vqnhite.records) {
          record.sample = i;
          result.trace.records.push_back(std::move(record));
        }
      } else {
        ++result.failed;
      }
    }
  }

  result.data_path = config.out + ".csv";
  result.summary_path = config.out + ".summary.csv";
  result.config_path = config.out + ".config.json";
  write_trace_csv(result.trace, result.data_path);
  write_summary_csv(summarize(result.trace), result.summary_path);

  json snapshot = json::parse(config.to_json());
  snapshot["code_version"] = kCodeVersion;
  snapshot["resolved_fields"] = fields;
  snapshot["sample_seeds"] = sample_seeds;
  json status_list = json::array();
  for (const auto& s : result.statuses) {
    status_list.push_back(
        {{"sample", s.sample}, {"method", s.method}, {"ok", s.ok}, {"error", s.error}});
  }
  snapshot["sample_status"] = status_list;
  std::ofstream config_out(result.config_path);
  if (!config_out) throw std::runtime_error("cannot write " + result.config_path);
  config_out << snapshot.dump(2) << "\n";

  return result;
}

std::vector<SummaryRow> summarize(const FidelityTrace& trace) {
  std::map<std::pair<std::string, double>, std::vector<const TraceRecord*>> groups;
  for (const auto& record : trace.records)
    groups[{record.method, record.beta}].push_back(&record);
  std::vector<SummaryRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, records] : groups) {
    SummaryRow row;
    row.method = key.first;
    row.beta = key.second;
    row.count = static_cast<int>(records.size());
    double sum_f = 0.0;
    double sum_e = 0.0;
    for (const auto* r : records) {
      sum_f += r->fidelity;
      sum_e += r->energy;
    }
    row.mean_fidelity = sum_f / row.count;
    row.mean_energy = sum_e / row.count;
    if (row.count > 1) {
      double var_f = 0.0;
      double var_e = 0.0;
      for (const auto* r : records) {
        var_f += (r->fidelity - row.mean_fidelity) * (r->fidelity - row.mean_fidelity);
        var_e += (r->energy - row.mean_energy) * (r->energy - row.mean_energy);
      }
      var_f /= row.count - 1;
      var_e /= row.count - 1;
      row.se_fidelity = std::sqrt(var_f / row.count);
      row.se_energy = std::sqrt(var_e / row.count);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trace_csv(const FidelityTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "beta,method,sample,fidelity,energy\n";
  for (const auto& r : trace.records) {
    out << format_double(r.beta) << ',' << r.method << ',' << r.sample << ','
        << format_double(r.fidelity) << ',' << format_double(r.energy) << '\n';
  }
}

FidelityTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path);
  if (line != "beta,method,sample,fidelity,energy")
    throw std::runtime_error("unexpected trace header in " + path);
  FidelityTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string item;
    TraceRecord record;
    std::getline(fields, item, ',');
    record.beta = std::stod(item);
    std::getline(fields, record.method, ',');
    std::getline(fields, item, ',');
    record.sample = std::stoi(item);
    std::getline(fields, item, ',');
    record.fidelity = std::stod(item);
    std::getline(fields, item, ',');
    record.energy = std::stod(item);
    trace.records.push_back(std::move(record));
  }
  return trace;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "method,beta,count,mean_fidelity,se_fidelity,mean_energy,se_energy\n";
  for (const auto& r : rows) {
    out << r.method << ',' << format_double(r.beta) << ',' << r.count << ','
        << format_double(r.mean_fidelity) << ',' << format_double(r.se_fidelity) << ','
        << format_double(r.mean_energy) << ',' << format_double(r.se_energy) << '\n';
  }
}

}  // namespace vqnhite
