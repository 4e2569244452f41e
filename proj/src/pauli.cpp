#include "vqnhite/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vqnhite/errors.hpp"
#include "vqnhite/rng.hpp"

namespace vqnhite {

namespace {

inline int bit_at(std::uint64_t bits, int qubit, int n) {
  return static_cast<int>((bits >> (n - 1 - qubit)) & 1ULL);
}

inline std::uint64_t flip_bit(std::uint64_t bits, int qubit, int n) {
  return bits ^ (1ULL << (n - 1 - qubit));
}

}  // namespace

char pauli_letter(Pauli p) {
  static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
  return letters[static_cast<int>(p)];
}

Pauli pauli_from_letter(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter: ") + c);
  }
}

PauliString::PauliString(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("PauliString needs at least one qubit");
  factors_.assign(static_cast<std::size_t>(n_qubits), Pauli::I);
}

PauliString::PauliString(std::string_view letters) {
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  factors_.reserve(letters.size());
  for (char c : letters) factors_.push_back(pauli_from_letter(c));
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  PauliString s(n_qubits);
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("qubit index out of range");
  s.set_factor(qubit, p);
  return s;
}

bool PauliString::is_identity() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

bool PauliString::is_diagonal() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](Pauli p) { return p == Pauli::I || p == Pauli::Z; });
}

std::optional<int> PauliString::first_offdiagonal_qubit() const {
  for (int q = 0; q < n_qubits(); ++q) {
    if (factor(q) == Pauli::X || factor(q) == Pauli::Y) return q;
  }
  return std::nullopt;
}

std::uint64_t PauliString::flip_mask() const {
  std::uint64_t mask = 0;
  const int n = n_qubits();
  for (int q = 0; q < n; ++q) {
    if (factor(q) == Pauli::X || factor(q) == Pauli::Y) mask |= 1ULL << (n - 1 - q);
  }
  return mask;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(factors_.size());
  for (Pauli p : factors_) out.push_back(pauli_letter(p));
  return out;
}

PauliApplyQuarter pauli_apply_quarter(const PauliString& p, std::uint64_t bits) {
  const int n = p.n_qubits();
  int quarter = 0;
  std::uint64_t out = bits;
  for (int q = 0; q < n; ++q) {
    const int b = bit_at(bits, q, n);
    switch (p.factor(q)) {
      case Pauli::I:
        break;
      case Pauli::X:
        out = flip_bit(out, q, n);
        break;
      case Pauli::Y:
        // Y|0> = i|1>, Y|1> = -i|0>
        out = flip_bit(out, q, n);
        quarter += b == 0 ? 1 : 3;
        break;
      case Pauli::Z:
        if (b == 1) quarter += 2;
        break;
    }
  }
  return {quarter & 3, out};
}

PauliApplyResult pauli_apply(const PauliString& p, std::uint64_t bits) {
  const auto r = pauli_apply_quarter(p, bits);
  return {quarter_phase(r.quarter), r.bits};
}

PauliMulQuarter pauli_mul_quarter(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("pauli_mul: mismatched qubit counts");
  // product[a][b] -> (letter, quarter phase of i)
  static constexpr Pauli letter[4][4] = {
      {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z},
      {Pauli::X, Pauli::I, Pauli::Z, Pauli::Y},
      {Pauli::Y, Pauli::Z, Pauli::I, Pauli::X},
      {Pauli::Z, Pauli::Y, Pauli::X, Pauli::I}};
  static constexpr int phase[4][4] = {
      {0, 0, 0, 0},
      {0, 0, 1, 3},
      {0, 3, 0, 1},
      {0, 1, 3, 0}};
  PauliString c(a.n_qubits());
  int quarter = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    const int ia = static_cast<int>(a.factor(q));
    const int ib = static_cast<int>(b.factor(q));
    c.set_factor(q, letter[ia][ib]);
    quarter += phase[ia][ib];
  }
  return {quarter & 3, std::move(c)};
}

PauliMulResult pauli_mul(const PauliString& a, const PauliString& b) {
  auto r = pauli_mul_quarter(a, b);
  return {quarter_phase(r.quarter), std::move(r.string)};
}

PauliSum PauliSum::from_terms(int n_qubits, std::vector<PauliTerm> terms) {
  std::map<std::vector<Pauli>, Complex> merged;
  for (auto& t : terms) {
    if (t.string.n_qubits() != n_qubits)
      throw std::invalid_argument("PauliSum: term qubit count mismatch");
    merged[t.string.factors()] += t.coeff;
  }
  PauliSum sum(n_qubits);
  for (auto& [factors, coeff] : merged) {
    if (std::abs(coeff) < kMergeTolerance) continue;
    PauliString s(n_qubits);
    for (int q = 0; q < n_qubits; ++q) s.set_factor(q, factors[static_cast<std::size_t>(q)]);
    sum.terms_.push_back({coeff, std::move(s)});
  }
  return sum;
}

bool PauliSum::all_coeffs_real(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [tol](const PauliTerm& t) { return std::abs(t.coeff.imag()) <= tol; });
}

PauliSum PauliSum::scaled(Complex factor) const {
  std::vector<PauliTerm> terms = terms_;
  for (auto& t : terms) t.coeff *= factor;
  return from_terms(n_qubits_, std::move(terms));
}

PauliSum build_heisenberg(int n, double j, const std::vector<double>& fields) {
  if (n < 1) throw std::invalid_argument("build_heisenberg: need at least one qubit");
  if (static_cast<int>(fields.size()) != n)
    throw std::invalid_argument("build_heisenberg: field vector length must equal qubit count");
  std::vector<PauliTerm> terms;
  terms.reserve(3 * static_cast<std::size_t>(n) + fields.size());
  for (int q = 0; q + 1 < n; ++q) {
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
      PauliString s(n);
      s.set_factor(q, p);
      s.set_factor(q + 1, p);
      terms.push_back({Complex(j, 0.0), std::move(s)});
    }
  }
  for (int q = 0; q < n; ++q) {
    terms.push_back({Complex(fields[static_cast<std::size_t>(q)], 0.0),
                     PauliString::single(n, q, Pauli::Z)});
  }
  return PauliSum::from_terms(n, std::move(terms));
}

PauliSum taylor_ite_pauli(const PauliSum& h, double dbeta, int order) {
  if (dbeta < 0.0) throw std::invalid_argument("taylor_ite_pauli: dbeta must be nonnegative");
  if (order != 1 && order != 2)
    throw std::invalid_argument("taylor_ite_pauli: order must be 1 or 2");
  const int n = h.n_qubits();
  std::vector<PauliTerm> terms;
  terms.push_back({Complex(1.0, 0.0), PauliString(n)});
  for (const auto& t : h.terms()) {
    terms.push_back({-dbeta * t.coeff, t.string});
  }
  if (order == 2) {
    for (const auto& a : h.terms()) {
      for (const auto& b : h.terms()) {
        auto prod = pauli_mul_quarter(a.string, b.string);
        const Complex coeff =
            0.5 * dbeta * dbeta * a.coeff * b.coeff * quarter_phase(prod.quarter);
        terms.push_back({coeff, std::move(prod.string)});
      }
    }
  }
  return PauliSum::from_terms(n, std::move(terms));
}

Eigen::MatrixXcd to_dense(const PauliString& p) {
  const int n = p.n_qubits();
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    const auto r = pauli_apply(p, s);
    m(static_cast<Eigen::Index>(r.bits), static_cast<Eigen::Index>(s)) = r.phase;
  }
  return m;
}

Eigen::MatrixXcd to_dense(const PauliSum& a, int dense_limit) {
  if (a.n_qubits() > dense_limit)
    throw ResourceError("to_dense: " + std::to_string(a.n_qubits()) +
                        " qubits exceeds dense limit of " + std::to_string(dense_limit));
  const auto dim = static_cast<Eigen::Index>(1) << a.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : a.terms()) {
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
      const auto r = pauli_apply(t.string, s);
      m(static_cast<Eigen::Index>(r.bits), static_cast<Eigen::Index>(s)) += t.coeff * r.phase;
    }
  }
  return m;
}

namespace {

std::string trim(std::string_view sv) {
  const auto begin = sv.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = sv.find_last_not_of(" \t\r");
  return std::string(sv.substr(begin, end - begin + 1));
}

}  // namespace

HamiltonianSpec parse_hamiltonian_config(std::string_view text) {
  HamiltonianSpec spec;
  bool have_n = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!trim(line).empty())
        throw std::invalid_argument("hamiltonian config: expected `key = value`, got: " + line);
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "n") {
      spec.n = std::stoi(value);
      have_n = true;
    } else if (key == "J" || key == "j") {
      spec.j = std::stod(value);
    } else if (key == "fields") {
      spec.fields.clear();
      std::istringstream fs(value);
      std::string item;
      while (std::getline(fs, item, ',')) spec.fields.push_back(std::stod(trim(item)));
    } else if (key == "field_seed") {
      spec.field_seed = std::stoull(value);
    } else {
      throw std::invalid_argument("hamiltonian config: unknown key `" + key + "`");
    }
  }
  if (!have_n || spec.n < 1)
    throw std::invalid_argument("hamiltonian config: missing or invalid `n`");
  return spec;
}

PauliSum build_from_spec(const HamiltonianSpec& spec) {
  std::vector<double> fields = spec.fields;
  if (fields.empty()) {
    if (spec.field_seed) {
      fields = uniform_fields(*spec.field_seed, spec.n);
    } else {
      fields.assign(static_cast<std::size_t>(spec.n), 0.0);
    }
  }
  return build_heisenberg(spec.n, spec.j, fields);
}

}  // namespace vqnhite
