#include "eada/losses.hpp"

#include <cmath>
#include <string>

namespace eada {

double nll_of(std::span<const double> energy, int label) {
  if (label < 0 || label >= static_cast<int>(energy.size())) {
    throw ContractError("label " + std::to_string(label) + " out of range for C=" +
                        std::to_string(energy.size()));
  }
  return energy[label] - free_energy_of(energy);
}

double nll_loss(const ModelParams& m, std::span<const double> x, int label) {
  const EnergyVector e = energies(m, x);
  return nll_of(e, label);
}

double nll_loss(const ModelParams& m, const Sample& s) {
  if (!s.label) throw ContractError("nll_loss requires a labeled sample");
  return nll_loss(m, s.features, *s.label);
}

double fea_of(double free_energy_value, double delta) {
  const double v = free_energy_value - delta;
  return v > 0.0 ? v : 0.0;
}

double fea_loss(const ModelParams& m, std::span<const double> x, double delta) {
  return fea_of(free_energy(m, x), delta);
}

LossBreakdown objective_batch(const ModelParams& m, std::span<const Sample> labeled,
                              std::span<const Sample> unlabeled_target, double delta,
                              const ObjectiveWeights& w) {
  if (labeled.empty()) throw ContractError("objective_batch requires a labeled batch");
  double nll_src = 0.0, nll_tgt = 0.0;
  long n_src = 0, n_tgt = 0;
  for (const Sample& s : labeled) {
    const double v = nll_loss(m, s);
    if (s.domain == Domain::Source) {
      nll_src += v;
      ++n_src;
    } else {
      nll_tgt += v;
      ++n_tgt;
    }
  }
  double fea_sum = 0.0;
  for (const Sample& s : unlabeled_target) {
    fea_sum += fea_loss(m, s.features, delta);
  }
  LossBreakdown out;
  const double mean_src = n_src > 0 ? nll_src / n_src : 0.0;
  const double mean_tgt = n_tgt > 0 ? nll_tgt / n_tgt : 0.0;
  out.nll = w.delta_source * mean_src + w.delta_target * mean_tgt;
  out.fea = unlabeled_target.empty() ? 0.0 : fea_sum / unlabeled_target.size();
  out.total = out.nll + w.gamma * out.fea;
  return out;
}

namespace {

// Backpropagates d(loss)/d(energies) for one sample into the parameter
// gradient, scaled by weight.
void accumulate_energy_grad(const ModelParams& m, std::span<const double> x,
                            std::span<const double> d_energy, double weight,
                            ModelParams& grad) {
  const int d = m.input_dim;
  const int c = m.num_classes;
  if (m.arch == Architecture::Linear) {
    for (int i = 0; i < c; ++i) {
      const double g = weight * d_energy[i];
      if (g == 0.0) continue;
      double* row = &grad.w1[static_cast<std::size_t>(i) * d];
      for (int j = 0; j < d; ++j) row[j] += g * x[j];
      if (m.has_bias) grad.b1[i] += g;
    }
    return;
  }
  const int h = m.hidden_width;
  std::vector<double> hidden(h);
  for (int i = 0; i < h; ++i) {
    double s = m.has_bias ? m.b1[i] : 0.0;
    const double* row = &m.w1[static_cast<std::size_t>(i) * d];
    for (int j = 0; j < d; ++j) s += row[j] * x[j];
    hidden[i] = std::tanh(s);
  }
  std::vector<double> d_hidden(h, 0.0);
  for (int i = 0; i < c; ++i) {
    const double g = weight * d_energy[i];
    if (g == 0.0) continue;
    double* row = &grad.w2[static_cast<std::size_t>(i) * h];
    const double* w2row = &m.w2[static_cast<std::size_t>(i) * h];
    for (int j = 0; j < h; ++j) {
      row[j] += g * hidden[j];
      d_hidden[j] += g * w2row[j];
    }
    if (m.has_bias) grad.b2[i] += g;
  }
  for (int i = 0; i < h; ++i) {
    const double dz = d_hidden[i] * (1.0 - hidden[i] * hidden[i]);
    if (dz == 0.0) continue;
    double* row = &grad.w1[static_cast<std::size_t>(i) * d];
    for (int j = 0; j < d; ++j) row[j] += dz * x[j];
    if (m.has_bias) grad.b1[i] += dz;
  }
}

// d nll / d E_c = 1{c==y} - p(c|x)
std::vector<double> nll_energy_grad(std::span<const double> energy, int label) {
  std::vector<double> g = class_posterior(energy);
  for (double& v : g) v = -v;
  g[label] += 1.0;
  return g;
}

}  // namespace

ModelParams grad_objective(const ModelParams& m, std::span<const Sample> labeled,
                           std::span<const Sample> unlabeled_target, double delta,
                           const ObjectiveWeights& w) {
  if (labeled.empty()) throw ContractError("grad_objective requires a labeled batch");
  ModelParams grad = zeros_like(m);
  long n_src = 0, n_tgt = 0;
  for (const Sample& s : labeled) {
    (s.domain == Domain::Source ? n_src : n_tgt)++;
  }
  const double w_src = n_src > 0 ? w.delta_source / n_src : 0.0;
  const double w_tgt = n_tgt > 0 ? w.delta_target / n_tgt : 0.0;
  for (const Sample& s : labeled) {
    if (!s.label) throw ContractError("labeled batch contains an unlabeled sample");
    const EnergyVector e = energies(m, s.features);
    const std::vector<double> de = nll_energy_grad(e, *s.label);
    accumulate_energy_grad(m, s.features, de, s.domain == Domain::Source ? w_src : w_tgt,
                           grad);
  }
  if (!unlabeled_target.empty() && w.gamma != 0.0) {
    const double w_fea = w.gamma / unlabeled_target.size();
    for (const Sample& s : unlabeled_target) {
      const EnergyVector e = energies(m, s.features);
      // d fea / d E_c = p(c|x) on the active side of the hinge, 0 otherwise
      // (including exactly at the kink).
      if (free_energy_of(e) > delta) {
        const std::vector<double> p = class_posterior(e);
        accumulate_energy_grad(m, s.features, p, w_fea, grad);
      }
    }
  }
  return grad;
}

ModelParams grad_nll(const ModelParams& m, std::span<const double> x, int label) {
  const EnergyVector e = energies(m, x);
  const std::vector<double> de = nll_energy_grad(e, label);
  ModelParams grad = zeros_like(m);
  accumulate_energy_grad(m, x, de, 1.0, grad);
  return grad;
}

ModelParams grad_free_energy(const ModelParams& m, std::span<const double> x) {
  const EnergyVector e = energies(m, x);
  const std::vector<double> p = class_posterior(e);
  ModelParams grad = zeros_like(m);
  accumulate_energy_grad(m, x, p, 1.0, grad);
  return grad;
}

ModelParams finite_diff_grad(const ModelParams& m,
                             const std::function<double(const ModelParams&)>& loss,
                             double h) {
  if (!(h > 0.0)) throw ContractError("finite_diff_grad requires h > 0");
  ModelParams probe = m;
  ModelParams grad = zeros_like(m);
  const std::vector<double*> p = param_ptrs(probe);
  const std::vector<double*> g = param_ptrs(grad);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double saved = *p[i];
    *p[i] = saved + h;
    const double up = loss(probe);
    *p[i] = saved - h;
    const double down = loss(probe);
    *p[i] = saved;
    *g[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace eada
