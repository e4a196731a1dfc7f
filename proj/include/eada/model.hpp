#pragma once

#include <span>
#include <vector>

#include "eada/rng.hpp"
#include "eada/types.hpp"

namespace eada {

enum class Architecture { Linear, OneHiddenLayer };

// One energy per class; lower = more compatible.
using EnergyVector = std::vector<double>;

// Dense classifier whose raw outputs are the per-class energies E(x, c).
// Class probabilities, when needed, are softmax over negated energies.
// The same struct doubles as the gradient container (identical shape).
struct ModelParams {
  Architecture arch = Architecture::Linear;
  int input_dim = 0;     // D
  int num_classes = 0;   // C
  int hidden_width = 0;  // H; 0 unless OneHiddenLayer
  bool has_bias = true;

  std::vector<double> w1;  // Linear: C x D, OneHiddenLayer: H x D (row-major)
  std::vector<double> b1;  // length C (Linear) or H; empty when bias-free
  std::vector<double> w2;  // OneHiddenLayer: C x H
  std::vector<double> b2;  // OneHiddenLayer: C; empty when bias-free

  static ModelParams linear(int input_dim, int num_classes, bool bias = true);
  static ModelParams one_hidden(int input_dim, int hidden_width, int num_classes,
                                bool bias = true);

  std::size_t param_count() const;
  bool all_finite() const;
};

// Same shapes, all parameters zero.
ModelParams zeros_like(const ModelParams& m);

// Weights i.i.d. uniform on [-range, range]; biases stay zero.
void init_uniform_weights(ModelParams& m, Rng& rng, double range = 0.1);

// Pointers to every parameter in a fixed order (w1, b1, w2, b2).
std::vector<double*> param_ptrs(ModelParams& m);
std::vector<const double*> param_ptrs(const ModelParams& m);

// y += alpha * x, over all parameters. Shapes must match.
void axpy_params(ModelParams& y, double alpha, const ModelParams& x);
double dot_params(const ModelParams& a, const ModelParams& b);
double norm_params(const ModelParams& a);

// Forward pass: the network output per class is the energy.
EnergyVector energies(const ModelParams& m, std::span<const double> x);

// F(E) = -log sum_c exp(-E_c), evaluated with a min-shift so it is finite
// for any finite energies and satisfies min(E) - log C <= F <= min(E).
double free_energy_of(std::span<const double> energy);
double free_energy(const ModelParams& m, std::span<const double> x);

// softmax(-E); shares the shift with free_energy_of.
std::vector<double> class_posterior(std::span<const double> energy);

// argmin energy; ties broken by the smallest class index.
int predict_energies(std::span<const double> energy);
int predict(const ModelParams& m, std::span<const double> x);

}  // namespace eada
