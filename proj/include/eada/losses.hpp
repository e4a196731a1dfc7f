#pragma once

#include <functional>
#include <span>

#include "eada/model.hpp"
#include "eada/types.hpp"

namespace eada {

// Weights of the full objective:
//   delta_source * mean nll(source-labeled)
// + delta_target * mean nll(target-labeled)
// + gamma        * mean hinge(F - delta) over unlabeled target.
struct ObjectiveWeights {
  double gamma = 0.01;
  double delta_source = 1.0;
  double delta_target = 1.0;
};

struct LossBreakdown {
  double nll = 0.0;    // delta-weighted supervised term
  double fea = 0.0;    // mean alignment hinge over unlabeled target (unweighted)
  double total = 0.0;  // nll + gamma * fea
  double tau = 1.0;    // reverse temperature; fixed at 1 in this version
};

// nll(x, y) = E(x, y) - F(x); equals the cross-entropy of softmax(-E) at y.
double nll_of(std::span<const double> energy, int label);
double nll_loss(const ModelParams& m, std::span<const double> x, int label);
double nll_loss(const ModelParams& m, const Sample& s);

// Alignment hinge: max(0, F - delta).
double fea_of(double free_energy_value, double delta);
double fea_loss(const ModelParams& m, std::span<const double> x, double delta);

LossBreakdown objective_batch(const ModelParams& m, std::span<const Sample> labeled,
                              std::span<const Sample> unlabeled_target, double delta,
                              const ObjectiveWeights& w);

// Analytic gradient of objective_batch's total, with the model's shape.
// At the hinge kink F == delta the subgradient 0 is used.
ModelParams grad_objective(const ModelParams& m, std::span<const Sample> labeled,
                           std::span<const Sample> unlabeled_target, double delta,
                           const ObjectiveWeights& w);

// Single-sample gradients used by the theory probes.
ModelParams grad_nll(const ModelParams& m, std::span<const double> x, int label);
ModelParams grad_free_energy(const ModelParams& m, std::span<const double> x);

// Central-difference gradient of an arbitrary scalar loss over all parameters.
ModelParams finite_diff_grad(const ModelParams& m,
                             const std::function<double(const ModelParams&)>& loss,
                             double h);

}  // namespace eada
