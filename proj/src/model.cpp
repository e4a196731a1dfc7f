#include "eada/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eada {

ModelParams ModelParams::linear(int input_dim, int num_classes, bool bias) {
  if (input_dim < 1 || num_classes < 2) {
    throw ShapeError("linear model requires D >= 1 and C >= 2");
  }
  ModelParams m;
  m.arch = Architecture::Linear;
  m.input_dim = input_dim;
  m.num_classes = num_classes;
  m.has_bias = bias;
  m.w1.assign(static_cast<std::size_t>(num_classes) * input_dim, 0.0);
  if (bias) m.b1.assign(num_classes, 0.0);
  return m;
}

ModelParams ModelParams::one_hidden(int input_dim, int hidden_width, int num_classes,
                                    bool bias) {
  if (input_dim < 1 || hidden_width < 1 || num_classes < 2) {
    throw ShapeError("hidden-layer model requires D >= 1, H >= 1 and C >= 2");
  }
  ModelParams m;
  m.arch = Architecture::OneHiddenLayer;
  m.input_dim = input_dim;
  m.num_classes = num_classes;
  m.hidden_width = hidden_width;
  m.has_bias = bias;
  m.w1.assign(static_cast<std::size_t>(hidden_width) * input_dim, 0.0);
  m.w2.assign(static_cast<std::size_t>(num_classes) * hidden_width, 0.0);
  if (bias) {
    m.b1.assign(hidden_width, 0.0);
    m.b2.assign(num_classes, 0.0);
  }
  return m;
}

std::size_t ModelParams::param_count() const {
  return w1.size() + b1.size() + w2.size() + b2.size();
}

bool ModelParams::all_finite() const {
  auto ok = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  return ok(w1) && ok(b1) && ok(w2) && ok(b2);
}

ModelParams zeros_like(const ModelParams& m) {
  ModelParams z = m;
  std::fill(z.w1.begin(), z.w1.end(), 0.0);
  std::fill(z.b1.begin(), z.b1.end(), 0.0);
  std::fill(z.w2.begin(), z.w2.end(), 0.0);
  std::fill(z.b2.begin(), z.b2.end(), 0.0);
  return z;
}

void init_uniform_weights(ModelParams& m, Rng& rng, double range) {
  for (double& w : m.w1) w = rng.uniform(-range, range);
  for (double& w : m.w2) w = rng.uniform(-range, range);
}

std::vector<double*> param_ptrs(ModelParams& m) {
  std::vector<double*> out;
  out.reserve(m.param_count());
  for (double& v : m.w1) out.push_back(&v);
  for (double& v : m.b1) out.push_back(&v);
  for (double& v : m.w2) out.push_back(&v);
  for (double& v : m.b2) out.push_back(&v);
  return out;
}

std::vector<const double*> param_ptrs(const ModelParams& m) {
  std::vector<const double*> out;
  out.reserve(m.param_count());
  for (const double& v : m.w1) out.push_back(&v);
  for (const double& v : m.b1) out.push_back(&v);
  for (const double& v : m.w2) out.push_back(&v);
  for (const double& v : m.b2) out.push_back(&v);
  return out;
}

namespace {

void check_same_shape(const ModelParams& a, const ModelParams& b) {
  if (a.w1.size() != b.w1.size() || a.b1.size() != b.b1.size() ||
      a.w2.size() != b.w2.size() || a.b2.size() != b.b2.size()) {
    throw ShapeError("parameter shape mismatch");
  }
}

}  // namespace

void axpy_params(ModelParams& y, double alpha, const ModelParams& x) {
  check_same_shape(y, x);
  for (std::size_t i = 0; i < y.w1.size(); ++i) y.w1[i] += alpha * x.w1[i];
  for (std::size_t i = 0; i < y.b1.size(); ++i) y.b1[i] += alpha * x.b1[i];
  for (std::size_t i = 0; i < y.w2.size(); ++i) y.w2[i] += alpha * x.w2[i];
  for (std::size_t i = 0; i < y.b2.size(); ++i) y.b2[i] += alpha * x.b2[i];
}

double dot_params(const ModelParams& a, const ModelParams& b) {
  check_same_shape(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.w1.size(); ++i) s += a.w1[i] * b.w1[i];
  for (std::size_t i = 0; i < a.b1.size(); ++i) s += a.b1[i] * b.b1[i];
  for (std::size_t i = 0; i < a.w2.size(); ++i) s += a.w2[i] * b.w2[i];
  for (std::size_t i = 0; i < a.b2.size(); ++i) s += a.b2[i] * b.b2[i];
  return s;
}

double norm_params(const ModelParams& a) { return std::sqrt(dot_params(a, a)); }

EnergyVector energies(const ModelParams& m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.input_dim) {
    throw ShapeError("input has dimension " + std::to_string(x.size()) +
                     ", model expects " + std::to_string(m.input_dim));
  }
  const int d = m.input_dim;
  const int c = m.num_classes;
  if (m.arch == Architecture::Linear) {
    EnergyVector e(c, 0.0);
    for (int i = 0; i < c; ++i) {
      double s = m.has_bias ? m.b1[i] : 0.0;
      const double* row = &m.w1[static_cast<std::size_t>(i) * d];
      for (int j = 0; j < d; ++j) s += row[j] * x[j];
      e[i] = s;
    }
    return e;
  }
  const int h = m.hidden_width;
  std::vector<double> hidden(h);
  for (int i = 0; i < h; ++i) {
    double s = m.has_bias ? m.b1[i] : 0.0;
    const double* row = &m.w1[static_cast<std::size_t>(i) * d];
    for (int j = 0; j < d; ++j) s += row[j] * x[j];
    hidden[i] = std::tanh(s);
  }
  EnergyVector e(c, 0.0);
  for (int i = 0; i < c; ++i) {
    double s = m.has_bias ? m.b2[i] : 0.0;
    const double* row = &m.w2[static_cast<std::size_t>(i) * h];
    for (int j = 0; j < h; ++j) s += row[j] * hidden[j];
    e[i] = s;
  }
  return e;
}

double free_energy_of(std::span<const double> energy) {
  if (energy.empty()) throw ShapeError("free energy of an empty energy vector");
  const double emin = *std::min_element(energy.begin(), energy.end());
  double s = 0.0;
  for (double e : energy) s += std::exp(emin - e);
  return emin - std::log(s);
}

double free_energy(const ModelParams& m, std::span<const double> x) {
  const EnergyVector e = energies(m, x);
  return free_energy_of(e);
}

std::vector<double> class_posterior(std::span<const double> energy) {
  if (energy.empty()) throw ShapeError("posterior of an empty energy vector");
  const double emin = *std::min_element(energy.begin(), energy.end());
  std::vector<double> p(energy.size());
  double s = 0.0;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    p[i] = std::exp(emin - energy[i]);
    s += p[i];
  }
  for (double& v : p) v /= s;
  return p;
}

int predict_energies(std::span<const double> energy) {
  if (energy.empty()) throw ShapeError("predict over an empty energy vector");
  int best = 0;
  for (int i = 1; i < static_cast<int>(energy.size()); ++i) {
    if (energy[i] < energy[best]) best = i;
  }
  return best;
}

int predict(const ModelParams& m, std::span<const double> x) {
  const EnergyVector e = energies(m, x);
  return predict_energies(e);
}

}  // namespace eada
