#include "vqnhite/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vqnhite/errors.hpp"

namespace vqnhite {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void apply_op(StateVector& psi, const JobOp& op) {
  if (const auto* circuit = std::get_if<OpCircuit>(&op)) {
    if (circuit->insert_param >= 0) {
      psi = run_circuit_with_insertion(circuit->ansatz, circuit->theta, circuit->insert_param,
                                       circuit->insert_generator, psi);
    } else {
      psi = run_circuit(circuit->ansatz, circuit->theta, psi);
    }
  } else if (const auto* pauli = std::get_if<OpPauli>(&op)) {
    apply_pauli_inplace(psi, pauli->pauli);
  } else {
    apply_dense(psi, std::get<OpUnitary>(op).matrix);
  }
}

struct Branches {
  StateVector zero;
  StateVector one;
};

// The two ancilla blocks of the register after all operations and V.
Branches prepare_branches(const AncillaJob& job) {
  if (job.system_initial.n_qubits != job.n_system)
    throw std::invalid_argument("ancilla job: system state size mismatch");
  Branches b{job.system_initial, job.system_initial};
  const Complex prep = Complex(std::cos(job.phase), std::sin(job.phase)) * kInvSqrt2;
  for (auto& a : b.zero.amps) a *= kInvSqrt2;
  for (auto& a : b.one.amps) a *= prep;
  for (const auto& cop : job.ops) {
    if (cop.control != 1) apply_op(b.zero, cop.op);
    if (cop.control != 0) apply_op(b.one, cop.op);
  }
  if (job.post_v) {
    apply_dense(b.zero, job.post_v->v);
    apply_dense(b.one, job.post_v->v);
  }
  return b;
}

Estimate from_samples(double sum, double sum_sq, int shots) {
  const double mean = sum / shots;
  double se = 0.0;
  if (shots > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / shots) / (shots - 1));
    se = std::sqrt(var / shots);
  }
  return {mean, se};
}

Estimate run_job(const AncillaJob& job, const std::function<double(std::uint64_t)>* weight) {
  const Branches b = prepare_branches(job);
  const std::size_t dim = b.zero.dim();

  if (job.shots <= 0) {
    double value = 0.0;
    for (std::size_t s = 0; s < dim; ++s) {
      const Complex cross = std::conj(b.zero.amps[s]) * b.one.amps[s];
      const double quadrature =
          job.basis == AncillaBasis::X ? 2.0 * cross.real() : 2.0 * cross.imag();
      value += weight ? (*weight)(s)*quadrature : quadrature;
    }
    return {value, 0.0};
  }

  // Rotate the ancilla into the measurement basis and sample outcomes from
  // the exact joint distribution.
  std::vector<double> p_plus(dim), p_minus(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    Complex one = b.one.amps[s];
    if (job.basis == AncillaBasis::Y) one *= Complex(0.0, -1.0);
    const Complex plus = (b.zero.amps[s] + one) * kInvSqrt2;
    const Complex minus = (b.zero.amps[s] - one) * kInvSqrt2;
    p_plus[s] = std::norm(plus);
    p_minus[s] = std::norm(minus);
  }
  std::vector<double> cdf(2 * dim);
  double acc = 0.0;
  for (std::size_t s = 0; s < dim; ++s) cdf[s] = (acc += p_plus[s]);
  for (std::size_t s = 0; s < dim; ++s) cdf[dim + s] = (acc += p_minus[s]);
  const double total = acc;

  Rng rng(job.seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int shot = 0; shot < job.shots; ++shot) {
    const double u = uniform_unit(rng) * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), 2 * dim - 1);
    const double anc = idx < dim ? 1.0 : -1.0;
    const std::uint64_t outcome = idx < dim ? idx : idx - dim;
    const double x = weight ? anc * (*weight)(outcome) : anc;
    sum += x;
    sum_sq += x * x;
  }
  return from_samples(sum, sum_sq, job.shots);
}

Estimate combine(std::vector<std::pair<double, Estimate>> weighted) {
  double value = 0.0;
  double var = 0.0;
  for (const auto& [c, est] : weighted) {
    value += c * est.value;
    var += c * c * est.std_error * est.std_error;
  }
  return {value, std::sqrt(var)};
}

}  // namespace

void apply_dense(StateVector& psi, const Eigen::MatrixXcd& u) {
  const auto dim = static_cast<Eigen::Index>(psi.dim());
  if (u.rows() != dim || u.cols() != dim)
    throw std::invalid_argument("apply_dense: matrix size mismatch");
  Eigen::Map<Eigen::VectorXcd> v(psi.amps.data(), dim);
  v = (u * v).eval();
}

std::pair<int, std::uint64_t> MeasurementBasisV::outcome_to_eigenlabel(
    std::uint64_t outcome) const {
  const int n = pauli.n_qubits();
  if (bit_of(outcome, pivot, n) == 0) return {+1, outcome};
  // flip_mask always contains the pivot bit, so the label has it cleared.
  return {-1, outcome ^ flip_mask};
}

MeasurementBasisV build_V(const PauliString& p) {
  const auto pivot = p.first_offdiagonal_qubit();
  if (!pivot)
    throw std::invalid_argument("build_V: Pauli string is diagonal; use the direct "
                                "computational-basis path");
  MeasurementBasisV out;
  out.pauli = p;
  out.pivot = *pivot;
  out.flip_mask = p.flip_mask();
  const int n = p.n_qubits();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  out.phase_table.resize(static_cast<std::size_t>(dim));
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s)
    out.phase_table[s] = pauli_apply(p, s).phase;

  // Columns of V^dagger are the eigenstates assigned to each readout outcome:
  // outcome (0, r) -> |+, label r>, outcome (1, r) -> |-, label r ^ flip>.
  Eigen::MatrixXcd v_dag = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(dim); ++t) {
    const bool minus = bit_of(t, out.pivot, n) == 1;
    const std::uint64_t label = minus ? (t ^ out.flip_mask) : t;
    const Complex ph = out.phase_table[label];  // P|label> = ph |label ^ flip>
    v_dag(static_cast<Eigen::Index>(label), static_cast<Eigen::Index>(t)) =
        std::conj(ph) * kInvSqrt2;
    v_dag(static_cast<Eigen::Index>(label ^ out.flip_mask), static_cast<Eigen::Index>(t)) +=
        (minus ? -1.0 : 1.0) * kInvSqrt2;
  }
  out.v = v_dag.adjoint();
  return out;
}

Estimate hadamard_test(const AncillaJob& job) { return run_job(job, nullptr); }

Estimate hadamard_test_weighted(const AncillaJob& job,
                                const std::function<double(std::uint64_t)>& weight) {
  return run_job(job, &weight);
}

StateVector assemble_register(const AncillaJob& job) {
  const Branches b = prepare_branches(job);
  StateVector full(job.n_system + 1);
  const std::size_t dim = b.zero.dim();
  for (std::size_t s = 0; s < dim; ++s) {
    full.amps[s] = b.zero.amps[s];
    full.amps[dim + s] = b.one.amps[s];
  }
  return full;
}

Estimate sampled_diagonal_expectation(const StateVector& psi,
                                      const std::function<double(std::uint64_t)>& weight,
                                      int shots, std::uint64_t seed) {
  const std::size_t dim = psi.dim();
  if (shots <= 0) {
    double value = 0.0;
    for (std::size_t s = 0; s < dim; ++s) value += weight(s) * std::norm(psi.amps[s]);
    return {value, 0.0};
  }
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t s = 0; s < dim; ++s) cdf[s] = (acc += std::norm(psi.amps[s]));
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int shot = 0; shot < shots; ++shot) {
    const double u = uniform_unit(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t s = std::min<std::size_t>(it - cdf.begin(), dim - 1);
    const double x = weight(s);
    sum += x;
    sum_sq += x * x;
  }
  return from_samples(sum, sum_sq, shots);
}

std::vector<PmRow> estimate_pm_probs(const StateVector& psi, const PauliString& p, int shots,
                                     std::uint64_t seed) {
  const MeasurementBasisV basis = build_V(p);
  StateVector rotated = psi;
  apply_dense(rotated, basis.v);
  const int n = psi.n_qubits;
  const std::size_t dim = psi.dim();

  std::vector<double> prob(dim, 0.0);
  if (shots <= 0) {
    for (std::size_t t = 0; t < dim; ++t) prob[t] = std::norm(rotated.amps[t]);
  } else {
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::size_t t = 0; t < dim; ++t) cdf[t] = (acc += std::norm(rotated.amps[t]));
    Rng rng(seed);
    for (int shot = 0; shot < shots; ++shot) {
      const double u = uniform_unit(rng) * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t t = std::min<std::size_t>(it - cdf.begin(), dim - 1);
      prob[t] += 1.0 / shots;
    }
  }

  std::vector<PmRow> rows;
  rows.reserve(dim / 2);
  for (std::uint64_t label = 0; label < dim; ++label) {
    if (bit_of(label, basis.pivot, n) != 0) continue;
    PmRow row;
    row.label = label;
    row.p_plus = prob[label];
    row.p_minus = prob[label ^ basis.flip_mask];
    rows.push_back(row);
  }
  return rows;
}

Estimate nondiagonal_expectation(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                                 const MlpParams* nn, const PauliString& p,
                                 const StateVector& input, int shots, std::uint64_t seed) {
  const StateVector phi = run_circuit(ansatz, theta, input);
  const auto rows = estimate_pm_probs(phi, p, shots, seed);
  const std::uint64_t mask = p.flip_mask();
  double value = 0.0;
  for (const auto& row : rows) {
    const double fs = nn ? nn_forward(*nn, row.label) : 1.0;
    const double fst = nn ? nn_forward(*nn, row.label ^ mask) : 1.0;
    value += (row.p_plus - row.p_minus) * fs * fst;
  }
  return {value, 0.0};
}

namespace {

AncillaJob overlap_job(int n_system, const StateVector& input, double phase,
                       std::vector<ControlledOp> ops, const EstimatorOptions& opt,
                       std::uint64_t job_index, AncillaBasis basis = AncillaBasis::X) {
  AncillaJob job;
  job.n_system = n_system;
  job.system_initial = input;
  job.phase = phase;
  job.ops = std::move(ops);
  job.basis = basis;
  job.shots = opt.shots;
  job.seed = derive_seed(opt.seed, job_index);
  return job;
}

OpCircuit plain_circuit(const AnsatzCircuit& ansatz, const std::vector<double>& theta) {
  return OpCircuit{ansatz, theta, -1, PauliString(ansatz.n_qubits())};
}

OpCircuit inserted_circuit(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                           int param, const PauliString& generator) {
  return OpCircuit{ansatz, theta, param, generator};
}

}  // namespace

Estimate fig5a1(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                const std::function<double(std::uint64_t)>& weight, const StateVector& input,
                const EstimatorOptions& opt) {
  std::vector<std::pair<double, Estimate>> parts;
  std::uint64_t job_index = 0;
  for (const auto& term : ansatz.derivative_terms(j)) {
    auto job = overlap_job(ansatz.n_qubits(), input, term.phase,
                           {{0, plain_circuit(ansatz, theta)},
                            {1, inserted_circuit(ansatz, theta, j, term.generator)}},
                           opt, job_index++);
    parts.emplace_back(term.r, hadamard_test_weighted(job, weight));
  }
  return combine(std::move(parts));
}

Estimate fig5a2(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                const PauliString& p,
                const std::function<double(std::uint64_t, std::uint64_t)>& pair_weight,
                const StateVector& input, const EstimatorOptions& opt) {
  const MeasurementBasisV basis = build_V(p);
  const std::uint64_t mask = basis.flip_mask;
  const auto outcome_weight = [&](std::uint64_t t) {
    const auto [sign, label] = basis.outcome_to_eigenlabel(t);
    return sign * pair_weight(label, label ^ mask);
  };
  std::vector<std::pair<double, Estimate>> parts;
  std::uint64_t job_index = 0;
  for (const auto& term : ansatz.derivative_terms(j)) {
    auto job = overlap_job(ansatz.n_qubits(), input, term.phase,
                           {{0, plain_circuit(ansatz, theta)},
                            {1, inserted_circuit(ansatz, theta, j, term.generator)}},
                           opt, job_index++);
    job.post_v = basis;
    parts.emplace_back(term.r, hadamard_test_weighted(job, outcome_weight));
  }
  return combine(std::move(parts));
}

Estimate fig5b(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j, int k,
               const std::function<double(std::uint64_t)>& weight, const StateVector& input,
               const EstimatorOptions& opt) {
  std::vector<std::pair<double, Estimate>> parts;
  std::uint64_t job_index = 0;
  for (const auto& bra_term : ansatz.derivative_terms(j)) {
    for (const auto& ket_term : ansatz.derivative_terms(k)) {
      auto job = overlap_job(
          ansatz.n_qubits(), input, ket_term.phase - bra_term.phase,
          {{0, inserted_circuit(ansatz, theta, j, bra_term.generator)},
           {1, inserted_circuit(ansatz, theta, k, ket_term.generator)}},
          opt, job_index++);
      parts.emplace_back(bra_term.r * ket_term.r, hadamard_test_weighted(job, weight));
    }
  }
  return combine(std::move(parts));
}

namespace {

ComplexEstimate combine_complex(std::vector<std::pair<Complex, ComplexEstimate>> weighted) {
  Complex value(0.0, 0.0);
  double var_re = 0.0;
  double var_im = 0.0;
  for (const auto& [c, est] : weighted) {
    value += c * est.value;
    // |c|^2 bounds the rotated-quadrature variance of c * (x + iy).
    const double c2 = std::norm(c);
    var_re += c2 * est.std_error_real * est.std_error_real;
    var_im += c2 * est.std_error_imag * est.std_error_imag;
  }
  return {value, std::sqrt(var_re), std::sqrt(var_im)};
}

// Both quadratures of e^{i phase} <bra|s><s|ket> summed with weight(s).
ComplexEstimate both_quadratures(int n_system, const StateVector& input, double phase,
                                 const std::vector<ControlledOp>& ops,
                                 const std::function<double(std::uint64_t)>& weight,
                                 const EstimatorOptions& opt, std::uint64_t job_index) {
  auto job_x = overlap_job(n_system, input, phase, ops, opt, 2 * job_index);
  auto job_y = overlap_job(n_system, input, phase, ops, opt, 2 * job_index + 1,
                           AncillaBasis::Y);
  const Estimate re = hadamard_test_weighted(job_x, weight);
  const Estimate im = hadamard_test_weighted(job_y, weight);
  return {Complex(re.value, im.value), re.std_error, im.std_error};
}

}  // namespace

ComplexEstimate fig5c(const AnsatzCircuit& ansatz, const std::vector<double>& theta,
                      const PauliSum& op, const std::function<double(std::uint64_t)>& weight,
                      const StateVector& input, const EstimatorOptions& opt) {
  std::vector<std::pair<Complex, ComplexEstimate>> parts;
  std::uint64_t job_index = 0;
  for (const auto& term : op.terms()) {
    std::vector<ControlledOp> ops{{0, JobOp{OpPauli{term.string}}},
                                  {1, JobOp{plain_circuit(ansatz, theta)}}};
    parts.emplace_back(term.coeff, both_quadratures(ansatz.n_qubits(), input, 0.0, ops,
                                                    weight, opt, job_index++));
  }
  return combine_complex(std::move(parts));
}

ComplexEstimate fig5d(const AnsatzCircuit& ansatz, const std::vector<double>& theta, int j,
                      const PauliSum& op, const std::function<double(std::uint64_t)>& weight,
                      const StateVector& input, const EstimatorOptions& opt) {
  std::vector<std::pair<Complex, ComplexEstimate>> parts;
  std::uint64_t job_index = 0;
  for (const auto& term : op.terms()) {
    for (const auto& deriv : ansatz.derivative_terms(j)) {
      std::vector<ControlledOp> ops{
          {0, JobOp{OpPauli{term.string}}},
          {1, JobOp{inserted_circuit(ansatz, theta, j, deriv.generator)}}};
      parts.emplace_back(term.coeff * deriv.r,
                         both_quadratures(ansatz.n_qubits(), input, deriv.phase, ops, weight,
                                          opt, job_index++));
    }
  }
  return combine_complex(std::move(parts));
}

ComplexEstimate appendix_element(AppendixKind kind, const AppendixInputs& in) {
  if (in.ansatz == nullptr) throw std::invalid_argument("appendix_element: ansatz required");
  switch (kind) {
    case AppendixKind::Fig5a1: {
      if (!in.weight) throw std::invalid_argument("fig5a1 needs a bitstring weight");
      const Estimate e = fig5a1(*in.ansatz, in.theta, in.j, in.weight, in.input, in.options);
      return {Complex(e.value, 0.0), e.std_error, 0.0};
    }
    case AppendixKind::Fig5a2: {
      if (in.pauli == nullptr || !in.pair_weight)
        throw std::invalid_argument("fig5a2 needs a Pauli string and pair weight");
      const Estimate e =
          fig5a2(*in.ansatz, in.theta, in.j, *in.pauli, in.pair_weight, in.input, in.options);
      return {Complex(e.value, 0.0), e.std_error, 0.0};
    }
    case AppendixKind::Fig5b: {
      if (!in.weight) throw std::invalid_argument("fig5b needs a bitstring weight");
      const Estimate e =
          fig5b(*in.ansatz, in.theta, in.j, in.k, in.weight, in.input, in.options);
      return {Complex(e.value, 0.0), e.std_error, 0.0};
    }
    case AppendixKind::Fig5c: {
      if (in.op == nullptr || !in.weight)
        throw std::invalid_argument("fig5c needs an operator and weight");
      return fig5c(*in.ansatz, in.theta, *in.op, in.weight, in.input, in.options);
    }
    case AppendixKind::Fig5d: {
      if (in.op == nullptr || !in.weight)
        throw std::invalid_argument("fig5d needs an operator and weight");
      return fig5d(*in.ansatz, in.theta, in.j, *in.op, in.weight, in.input, in.options);
    }
  }
  throw std::invalid_argument("appendix_element: unknown kind");
}

}  // namespace vqnhite
