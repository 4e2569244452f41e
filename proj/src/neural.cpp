#include "vqnhite/neural.hpp"

#include <cmath>
#include <stdexcept>

#include "vqnhite/rng.hpp"

namespace vqnhite {

namespace {

// Layer widths [n, n, n/2, 1]. The middle hidden layer may be empty for n = 1;
// the network then degenerates to a constant, which the loops handle.
std::vector<int> widths_for(int n) {
  return {n, n, n / 2, 1};
}

std::vector<double> input_vector(std::uint64_t bits, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) x[static_cast<std::size_t>(q)] = bit_of(bits, q, n) == 1 ? 1.0 : -1.0;
  return x;
}

std::vector<double> affine(const MlpParams::Layer& layer, const std::vector<double>& x) {
  std::vector<double> z(static_cast<std::size_t>(layer.out));
  for (int r = 0; r < layer.out; ++r) {
    double acc = layer.biases[static_cast<std::size_t>(r)];
    const double* row = layer.weights.data() + static_cast<std::size_t>(r) * layer.in;
    for (int c = 0; c < layer.in; ++c) acc += row[c] * x[static_cast<std::size_t>(c)];
    z[static_cast<std::size_t>(r)] = acc;
  }
  return z;
}

}  // namespace

MlpParams MlpParams::zeros(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("MlpParams: need at least one qubit");
  MlpParams params;
  params.n_qubits_ = n_qubits;
  const auto widths = widths_for(n_qubits);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    Layer layer;
    layer.in = widths[l];
    layer.out = widths[l + 1];
    layer.weights.assign(static_cast<std::size_t>(layer.in) * layer.out, 0.0);
    layer.biases.assign(static_cast<std::size_t>(layer.out), 0.0);
    params.layers_.push_back(std::move(layer));
  }
  return params;
}

MlpParams MlpParams::random_init(std::uint64_t seed, int n_qubits) {
  MlpParams params = zeros(n_qubits);
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < params.layers_.size(); ++l) {
    Layer& layer = params.layers_[l];
    const double scale = layer.in > 0 ? 1.0 / std::sqrt(static_cast<double>(layer.in)) : 1.0;
    for (auto& w : layer.weights) w = uniform_range(rng, -scale, scale);
    for (auto& b : layer.biases) b = uniform_range(rng, -scale, scale);
  }
  return params;
}

std::size_t MlpParams::n_params() const {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += layer.weights.size() + layer.biases.size();
  return total;
}

std::vector<double> MlpParams::to_flat() const {
  std::vector<double> flat;
  flat.reserve(n_params());
  for (const auto& layer : layers_) {
    flat.insert(flat.end(), layer.weights.begin(), layer.weights.end());
    flat.insert(flat.end(), layer.biases.begin(), layer.biases.end());
  }
  return flat;
}

MlpParams MlpParams::from_flat(int n_qubits, std::span<const double> flat) {
  MlpParams params = zeros(n_qubits);
  if (flat.size() != params.n_params())
    throw std::invalid_argument("MlpParams::from_flat: wrong record length");
  std::size_t pos = 0;
  for (auto& layer : params.layers_) {
    for (auto& w : layer.weights) w = flat[pos++];
    for (auto& b : layer.biases) b = flat[pos++];
  }
  return params;
}

double nn_forward(const MlpParams& params, std::uint64_t bits) {
  std::vector<double> x = input_vector(bits, params.n_qubits());
  const auto& layers = params.layers();
  for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
    x = affine(layers[l], x);
    for (auto& v : x) v = std::tanh(v);
  }
  const auto z = affine(layers.back(), x);
  return std::exp(z[0]);
}

double nn_value_and_gradient(const MlpParams& params, std::uint64_t bits,
                             std::vector<double>& gradient) {
  const auto& layers = params.layers();
  const std::size_t n_layers = layers.size();

  // Forward pass, keeping post-activation values per layer.
  std::vector<std::vector<double>> activations(n_layers + 1);
  activations[0] = input_vector(bits, params.n_qubits());
  for (std::size_t l = 0; l + 1 < n_layers; ++l) {
    activations[l + 1] = affine(layers[l], activations[l]);
    for (auto& v : activations[l + 1]) v = std::tanh(v);
  }
  activations[n_layers] = affine(layers.back(), activations[n_layers - 1]);
  const double value = std::exp(activations[n_layers][0]);

  gradient.assign(params.n_params(), 0.0);

  // Reverse pass: delta holds d value / d z for the current layer.
  std::vector<double> delta{value};
  std::size_t offset = params.n_params();
  for (std::size_t l = n_layers; l-- > 0;) {
    const auto& layer = layers[l];
    const auto& input = activations[l];
    offset -= layer.weights.size() + layer.biases.size();
    for (int r = 0; r < layer.out; ++r) {
      const double d = delta[static_cast<std::size_t>(r)];
      double* wgrad = gradient.data() + offset + static_cast<std::size_t>(r) * layer.in;
      for (int c = 0; c < layer.in; ++c) wgrad[c] = d * input[static_cast<std::size_t>(c)];
      gradient[offset + layer.weights.size() + static_cast<std::size_t>(r)] = d;
    }
    if (l == 0) break;
    std::vector<double> prev(static_cast<std::size_t>(layer.in), 0.0);
    for (int c = 0; c < layer.in; ++c) {
      double acc = 0.0;
      for (int r = 0; r < layer.out; ++r)
        acc += delta[static_cast<std::size_t>(r)] *
               layer.weights[static_cast<std::size_t>(r) * layer.in + c];
      // activations[l] are tanh outputs of the previous affine map.
      const double a = activations[l][static_cast<std::size_t>(c)];
      prev[static_cast<std::size_t>(c)] = acc * (1.0 - a * a);
    }
    delta = std::move(prev);
  }
  return value;
}

std::vector<double> nn_gradient(const MlpParams& params, std::uint64_t bits) {
  std::vector<double> gradient;
  nn_value_and_gradient(params, bits, gradient);
  return gradient;
}

StateVector apply_f(const MlpParams& params, const StateVector& psi) {
  if (params.n_qubits() != psi.n_qubits)
    throw std::invalid_argument("apply_f: dimension mismatch");
  StateVector out = psi;
  for (std::size_t s = 0; s < out.dim(); ++s) out.amps[s] *= nn_forward(params, s);
  return out;
}

std::vector<double> nn_forward_all(const MlpParams& params) {
  const std::size_t dim = std::size_t(1) << params.n_qubits();
  std::vector<double> values(dim);
  for (std::size_t s = 0; s < dim; ++s) values[s] = nn_forward(params, s);
  return values;
}

}  // namespace vqnhite
