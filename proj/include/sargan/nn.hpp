#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sargan/errors.hpp"
#include "sargan/rng.hpp"

namespace sargan {

enum class Activation : std::uint8_t { relu = 0, tanh = 1, sigmoid = 2, identity = 3 };

inline double apply_activation(Activation a, double z) {
  switch (a) {
    case Activation::relu: return z > 0.0 ? z : 0.0;
    case Activation::tanh: return std::tanh(z);
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::identity: return z;
  }
  throw UsageError("apply_activation: unknown activation");
}

/// Derivative from the pre-activation and the already-computed output.
/// relu'(0) is taken as 0, matching the subgradient convention used for L1.
inline double activation_deriv(Activation a, double pre, double post) {
  switch (a) {
    case Activation::relu: return pre > 0.0 ? 1.0 : 0.0;
    case Activation::tanh: return 1.0 - post * post;
    case Activation::sigmoid: return post * (1.0 - post);
    case Activation::identity: return 1.0;
  }
  throw UsageError("activation_deriv: unknown activation");
}

/// One affine layer: w is row-major out_dim x in_dim.
struct Layer {
  std::size_t out_dim = 0;
  std::size_t in_dim = 0;
  std::vector<double> w;
  std::vector<double> b;
};

struct MlpParams {
  std::vector<Layer> layers;
  std::vector<Activation> activations;  // one per layer

  std::size_t input_dim() const { return layers.empty() ? 0 : layers.front().in_dim; }
  std::size_t output_dim() const { return layers.empty() ? 0 : layers.back().out_dim; }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const Layer& ly : layers) n += ly.w.size() + ly.b.size();
    return n;
  }

  void validate() const {
    if (layers.empty()) throw ConfigError("mlp: no layers");
    if (activations.size() != layers.size())
      throw ConfigError("mlp: one activation tag required per layer");
    for (std::size_t k = 0; k < layers.size(); ++k) {
      const Layer& ly = layers[k];
      if (ly.w.size() != ly.out_dim * ly.in_dim || ly.b.size() != ly.out_dim)
        throw ConfigError("mlp: layer storage does not match its dimensions");
      if (k > 0 && layers[k - 1].out_dim != ly.in_dim)
        throw ConfigError("mlp: adjacent layer dimensions do not chain");
    }
  }
};

/// Weights uniform on (-1/sqrt(in_dim), +1/sqrt(in_dim)), biases zero.
/// Deterministic per seed; weights are drawn row-major, layer by layer.
inline MlpParams init_params(const std::vector<std::size_t>& layer_dims,
                             const std::vector<Activation>& activations,
                             std::uint64_t seed) {
  if (layer_dims.size() < 2)
    throw ConfigError("init_params: need an input and an output dimension");
  if (activations.size() != layer_dims.size() - 1)
    throw ConfigError("init_params: one activation tag required per layer");

  Rng rng(seed);
  MlpParams p;
  p.activations = activations;
  p.layers.resize(layer_dims.size() - 1);
  for (std::size_t k = 0; k + 1 < layer_dims.size(); ++k) {
    Layer& ly = p.layers[k];
    ly.in_dim = layer_dims[k];
    ly.out_dim = layer_dims[k + 1];
    ly.w.resize(ly.out_dim * ly.in_dim);
    ly.b.assign(ly.out_dim, 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(ly.in_dim));
    for (double& wv : ly.w) wv = rng.uniform(-s, s);
  }
  return p;
}

/// Cached forward activations, consumed by backward().
struct Tape {
  std::vector<std::vector<double>> act;  // act[0] = input, act[k+1] = output of layer k
  std::vector<std::vector<double>> pre;  // pre[k] = affine output of layer k
};

struct ForwardResult {
  std::vector<double> output;
  Tape tape;
};

inline ForwardResult forward(const MlpParams& p, const std::vector<double>& input) {
  p.validate();
  if (input.size() != p.input_dim())
    throw DimensionError("forward: input length does not match the first layer");

  ForwardResult r;
  r.tape.act.reserve(p.layers.size() + 1);
  r.tape.pre.reserve(p.layers.size());
  r.tape.act.push_back(input);
  for (std::size_t k = 0; k < p.layers.size(); ++k) {
    const Layer& ly = p.layers[k];
    const std::vector<double>& in = r.tape.act.back();
    std::vector<double> z(ly.out_dim);
    for (std::size_t o = 0; o < ly.out_dim; ++o) {
      const double* row = ly.w.data() + o * ly.in_dim;
      double s = ly.b[o];
      for (std::size_t i = 0; i < ly.in_dim; ++i) s += row[i] * in[i];
      z[o] = s;
    }
    std::vector<double> a(ly.out_dim);
    for (std::size_t o = 0; o < ly.out_dim; ++o)
      a[o] = apply_activation(p.activations[k], z[o]);
    r.tape.pre.push_back(std::move(z));
    r.tape.act.push_back(std::move(a));
  }
  r.output = r.tape.act.back();
  return r;
}

/// Per-parameter partial derivatives, shape-congruent with MlpParams, plus
/// the gradient with respect to the network input.
struct GradBundle {
  std::vector<Layer> layers;
  std::vector<double> input;
};

inline GradBundle zero_like(const MlpParams& p) {
  GradBundle g;
  g.layers.resize(p.layers.size());
  for (std::size_t k = 0; k < p.layers.size(); ++k) {
    g.layers[k].out_dim = p.layers[k].out_dim;
    g.layers[k].in_dim = p.layers[k].in_dim;
    g.layers[k].w.assign(p.layers[k].w.size(), 0.0);
    g.layers[k].b.assign(p.layers[k].b.size(), 0.0);
  }
  g.input.assign(p.input_dim(), 0.0);
  return g;
}

/// acc += a * g
inline void grad_axpy(GradBundle& acc, double a, const GradBundle& g) {
  if (acc.layers.size() != g.layers.size())
    throw DimensionError("grad_axpy: bundle shapes differ");
  for (std::size_t k = 0; k < acc.layers.size(); ++k) {
    Layer& al = acc.layers[k];
    const Layer& gl = g.layers[k];
    if (al.w.size() != gl.w.size() || al.b.size() != gl.b.size())
      throw DimensionError("grad_axpy: bundle shapes differ");
    for (std::size_t i = 0; i < al.w.size(); ++i) al.w[i] += a * gl.w[i];
    for (std::size_t i = 0; i < al.b.size(); ++i) al.b[i] += a * gl.b[i];
  }
  for (std::size_t i = 0; i < acc.input.size() && i < g.input.size(); ++i)
    acc.input[i] += a * g.input[i];
}

inline void grad_scale(GradBundle& g, double a) {
  for (Layer& ly : g.layers) {
    for (double& v : ly.w) v *= a;
    for (double& v : ly.b) v *= a;
  }
  for (double& v : g.input) v *= a;
}

/// Exact reverse-mode gradients of the scalar whose output-gradient is
/// supplied. The tape must come from a forward() call on the same parameters.
inline GradBundle backward(const MlpParams& p, const Tape& tape,
                           const std::vector<double>& output_grad) {
  const std::size_t L = p.layers.size();
  if (tape.act.size() != L + 1 || tape.pre.size() != L)
    throw UsageError("backward: tape does not match the parameter stack");
  for (std::size_t k = 0; k < L; ++k) {
    if (tape.act[k].size() != p.layers[k].in_dim ||
        tape.pre[k].size() != p.layers[k].out_dim)
      throw UsageError("backward: tape shapes do not match the parameters");
  }
  if (output_grad.size() != p.output_dim())
    throw DimensionError("backward: output gradient length mismatch");

  GradBundle g = zero_like(p);
  std::vector<double> delta(output_grad.size());
  for (std::size_t o = 0; o < delta.size(); ++o)
    delta[o] = output_grad[o] *
               activation_deriv(p.activations[L - 1], tape.pre[L - 1][o], tape.act[L][o]);

  for (std::size_t kk = L; kk-- > 0;) {
    const Layer& ly = p.layers[kk];
    Layer& gl = g.layers[kk];
    const std::vector<double>& in = tape.act[kk];
    for (std::size_t o = 0; o < ly.out_dim; ++o) {
      double* grow = gl.w.data() + o * ly.in_dim;
      const double d = delta[o];
      for (std::size_t i = 0; i < ly.in_dim; ++i) grow[i] = d * in[i];
      gl.b[o] = d;
    }
    std::vector<double> down(ly.in_dim, 0.0);
    for (std::size_t o = 0; o < ly.out_dim; ++o) {
      const double* row = ly.w.data() + o * ly.in_dim;
      const double d = delta[o];
      for (std::size_t i = 0; i < ly.in_dim; ++i) down[i] += row[i] * d;
    }
    if (kk == 0) {
      g.input = std::move(down);
    } else {
      for (std::size_t i = 0; i < down.size(); ++i)
        down[i] *= activation_deriv(p.activations[kk - 1], tape.pre[kk - 1][i],
                                    tape.act[kk][i]);
      delta = std::move(down);
    }
  }
  return g;
}

/// RMSProp state: squared-gradient moving average per parameter.
struct OptimizerState {
  std::vector<Layer> accum;
  double learning_rate = 5e-4;
  double decay = 0.9;
  double epsilon = 1e-8;
};

inline OptimizerState init_optimizer(const MlpParams& p, double learning_rate,
                                     double decay, double epsilon) {
  if (!(learning_rate >= 0.0)) throw ConfigError("optimizer: negative learning rate");
  if (!(decay > 0.0 && decay < 1.0)) throw ConfigError("optimizer: decay must be in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("optimizer: epsilon must be positive");
  OptimizerState s;
  s.accum = zero_like(p).layers;
  s.learning_rate = learning_rate;
  s.decay = decay;
  s.epsilon = epsilon;
  return s;
}

/// accum <- decay*accum + (1-decay)*g^2;  param <- param - lr*g/(sqrt(accum)+eps).
/// Refuses the whole step if any gradient entry is non-finite.
inline void optimizer_step(MlpParams& p, const GradBundle& g, OptimizerState& s) {
  if (g.layers.size() != p.layers.size() || s.accum.size() != p.layers.size())
    throw DimensionError("optimizer_step: shape mismatch");
  for (const Layer& gl : g.layers) {
    for (double v : gl.w)
      if (!std::isfinite(v)) throw TrainingError("optimizer_step: non-finite gradient, step refused");
    for (double v : gl.b)
      if (!std::isfinite(v)) throw TrainingError("optimizer_step: non-finite gradient, step refused");
  }
  for (std::size_t k = 0; k < p.layers.size(); ++k) {
    Layer& ly = p.layers[k];
    const Layer& gl = g.layers[k];
    Layer& ac = s.accum[k];
    if (gl.w.size() != ly.w.size() || gl.b.size() != ly.b.size())
      throw DimensionError("optimizer_step: shape mismatch");
    for (std::size_t i = 0; i < ly.w.size(); ++i) {
      ac.w[i] = s.decay * ac.w[i] + (1.0 - s.decay) * gl.w[i] * gl.w[i];
      ly.w[i] -= s.learning_rate * gl.w[i] / (std::sqrt(ac.w[i]) + s.epsilon);
    }
    for (std::size_t i = 0; i < ly.b.size(); ++i) {
      ac.b[i] = s.decay * ac.b[i] + (1.0 - s.decay) * gl.b[i] * gl.b[i];
      ly.b[i] -= s.learning_rate * gl.b[i] / (std::sqrt(ac.b[i]) + s.epsilon);
    }
  }
}

/// Clamp every weight and bias to [-c, c].
inline void clip_weights(MlpParams& p, double c) {
  if (!(c > 0.0)) throw ConfigError("clip_weights: clip constant must be positive");
  for (Layer& ly : p.layers) {
    for (double& v : ly.w) v = std::clamp(v, -c, c);
    for (double& v : ly.b) v = std::clamp(v, -c, c);
  }
}

/// Loss callback for gradient checking: returns the loss at p; when grad_out
/// is non-null, also fills it with the analytic parameter gradients.
using LossWithGrad = std::function<double(const MlpParams&, GradBundle*)>;

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::size_t worst_layer = 0;
  bool worst_is_bias = false;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  bool pass = false;
};

/// Scaled relative error with a unit floor, so finite-difference noise on
/// near-zero entries does not dominate.
inline double scaled_rel_err(double a, double b) {
  const double m = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / m;
}

/// Central finite differences over every parameter against the analytic
/// gradient reported by the loss itself.
inline GradCheckReport grad_check(const LossWithGrad& loss_fn, const MlpParams& p,
                                  double step, double tol) {
  GradBundle analytic = zero_like(p);
  loss_fn(p, &analytic);

  MlpParams q = p;
  GradCheckReport rep;
  auto probe = [&](double& slot, double analytic_g, std::size_t layer, bool is_bias,
                   std::size_t index) {
    const double saved = slot;
    slot = saved + step;
    const double lp = loss_fn(q, nullptr);
    slot = saved - step;
    const double lm = loss_fn(q, nullptr);
    slot = saved;
    const double fd = (lp - lm) / (2.0 * step);
    const double re = scaled_rel_err(analytic_g, fd);
    ++rep.checked;
    if (re > rep.max_rel_err) {
      rep.max_rel_err = re;
      rep.worst_layer = layer;
      rep.worst_is_bias = is_bias;
      rep.worst_index = index;
    }
  };
  for (std::size_t k = 0; k < q.layers.size(); ++k) {
    for (std::size_t i = 0; i < q.layers[k].w.size(); ++i)
      probe(q.layers[k].w[i], analytic.layers[k].w[i], k, false, i);
    for (std::size_t i = 0; i < q.layers[k].b.size(); ++i)
      probe(q.layers[k].b[i], analytic.layers[k].b[i], k, true, i);
  }
  rep.pass = rep.max_rel_err < tol;
  return rep;
}

}  // namespace sargan
