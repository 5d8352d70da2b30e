#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sargan/errors.hpp"
#include "sargan/nn.hpp"
#include "sargan/rng.hpp"
#include "sargan/signal.hpp"
#include "sargan/spectrum.hpp"

namespace sargan {

/// Complex signals cross the real-valued MLP boundary as length-2N real
/// vectors: all real parts first, then all imaginary parts.
inline std::vector<double> pack_signal(const RawSignal& x) {
  const std::size_t n = x.size();
  std::vector<double> v(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = x.samples[i].real();
    v[n + i] = x.samples[i].imag();
  }
  return v;
}

inline RawSignal unpack_signal(const std::vector<double>& v) {
  if (v.size() % 2 != 0)
    throw DimensionError("unpack_signal: packed vector length must be even");
  const std::size_t n = v.size() / 2;
  RawSignal x{std::vector<cplx>(n), Domain::time};
  for (std::size_t i = 0; i < n; ++i) x.samples[i] = cplx(v[i], v[n + i]);
  return x;
}

enum class TrainMode : std::uint8_t { standard_gan = 0, wgan = 1 };

/// Full-spectrum signal, its notched counterpart, and the mask that produced
/// it. The mask feeds the content loss during training only; recovery never
/// sees it.
struct TrainingPair {
  RawSignal x;
  RawSignal z;
  NotchMask mask;
};

/// Checks z = apply_mask(x, mask) within tol; run when loading a dataset.
inline void validate_pair(const TrainingPair& p, double tol = 1e-9) {
  if (p.x.size() != p.z.size() || p.x.size() != p.mask.size())
    throw DimensionError("training pair: mismatched lengths");
  const RawSignal masked = apply_mask(p.x, p.mask);
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (std::abs(masked.samples[i] - p.z.samples[i]) > tol)
      throw ConfigError(
          "training pair: notched signal does not match the mask applied to the "
          "full-spectrum signal");
  }
}

struct TrainConfig {
  double lambda = 0.01;
  std::size_t epochs = 100;
  std::size_t batch_size = 16;
  std::size_t critic_steps_per_gen_step = 5;
  TrainMode mode = TrainMode::wgan;
  double clip_c = 0.01;
  double learning_rate = 5e-4;
  double rmsprop_decay = 0.9;
  double rmsprop_epsilon = 1e-8;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(lambda >= 0.0)) throw ConfigError("train config: lambda must be nonnegative");
    if (epochs < 1) throw ConfigError("train config: epochs must be at least 1");
    if (batch_size < 1) throw ConfigError("train config: batch size must be at least 1");
    if (critic_steps_per_gen_step < 1)
      throw ConfigError("train config: critic steps must be at least 1");
    if (mode == TrainMode::wgan && !(clip_c > 0.0))
      throw ConfigError("train config: wgan mode needs a positive clip constant");
  }
};

struct EpochMetrics {
  double content_loss = 0.0;
  double adv_loss = 0.0;
  double disc_loss = 0.0;
};

struct TrainerState {
  MlpParams gen;
  MlpParams disc;
  OptimizerState gen_opt;
  OptimizerState disc_opt;
  std::size_t epoch = 0;
  std::vector<EpochMetrics> loss_history;
};

/// Generator [2N, 128, 128, 2N] and discriminator [2N, 128, 1]; relu hidden
/// layers, identity generator output, sigmoid critic output in standard mode
/// and raw score in wgan mode.
inline TrainerState init_trainer(std::size_t n_samples, const TrainConfig& cfg) {
  cfg.validate();
  const std::size_t d = 2 * n_samples;
  TrainerState st;
  st.gen = init_params({d, 128, 128, d},
                       {Activation::relu, Activation::relu, Activation::identity},
                       derive_seed(cfg.seed, "init", 0));
  const Activation disc_out =
      cfg.mode == TrainMode::standard_gan ? Activation::sigmoid : Activation::identity;
  st.disc = init_params({d, 128, 1}, {Activation::relu, disc_out},
                        derive_seed(cfg.seed, "init", 1));
  st.gen_opt = init_optimizer(st.gen, cfg.learning_rate, cfg.rmsprop_decay,
                              cfg.rmsprop_epsilon);
  st.disc_opt = init_optimizer(st.disc, cfg.learning_rate, cfg.rmsprop_decay,
                               cfg.rmsprop_epsilon);
  return st;
}

/// Loss value plus its gradient with respect to a time-domain signal, stored
/// as d/dRe + i d/dIm per sample.
struct SignalLoss {
  double value = 0.0;
  RawSignal grad;
  bool clamped = false;
};

/// Masked frequency-domain L1: sum over available bins of |F(gen_out) - F(x)|.
/// The gradient is the per-bin unit phasor of the difference (zero where the
/// difference vanishes) pulled back through the unitary DFT.
inline SignalLoss content_loss(const RawSignal& gen_out, const RawSignal& x,
                               const NotchMask& m) {
  if (gen_out.size() != x.size() || gen_out.size() != m.size())
    throw DimensionError("content_loss: mismatched lengths");
  const RawSignal sg = dft_forward(gen_out);
  const RawSignal sx = dft_forward(x);
  RawSignal gu{std::vector<cplx>(m.size(), cplx(0.0, 0.0)), Domain::frequency};
  double loss = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m.bits[k]) continue;
    const cplx d = sg.samples[k] - sx.samples[k];
    const double mag = std::abs(d);
    loss += mag;
    if (mag > 0.0) gu.samples[k] = d / mag;
  }
  return {loss, dft_inverse(gu), false};
}

constexpr double kLogClamp = 1e-12;

/// Generator-side adversarial term: -log D(gen_out) in standard mode,
/// -critic(gen_out) in wgan mode. A discriminator output at or below the
/// clamp is flagged and contributes zero gradient (the clamped loss is flat
/// there).
inline SignalLoss adversarial_loss_g(const MlpParams& disc, const RawSignal& gen_out,
                                     TrainMode mode) {
  const std::vector<double> v = pack_signal(gen_out);
  if (v.size() != disc.input_dim())
    throw DimensionError("adversarial_loss_g: discriminator input dim mismatch");
  if (disc.output_dim() != 1)
    throw DimensionError("adversarial_loss_g: discriminator must output one value");
  const ForwardResult fw = forward(disc, v);
  const double y = fw.output[0];

  double value = 0.0;
  double og = 0.0;
  bool clamped = false;
  if (mode == TrainMode::standard_gan) {
    double d = y;
    if (!(d > kLogClamp)) {
      d = kLogClamp;
      clamped = true;
    }
    value = -std::log(d);
    og = clamped ? 0.0 : -1.0 / d;
  } else {
    value = -y;
    og = -1.0;
  }
  const GradBundle gb = backward(disc, fw.tape, {og});
  return {value, unpack_signal(gb.input), clamped};
}

struct GeneratorLoss {
  double total = 0.0;
  double content = 0.0;
  double adversarial = 0.0;
  bool disc_clamped = false;
  GradBundle grads;
};

/// Weighted sum content + lambda * adversarial, with gradients accumulated
/// through the generator.
inline GeneratorLoss generator_loss(const TrainingPair& pair, const MlpParams& gen,
                                    const MlpParams& disc, const TrainConfig& cfg) {
  const std::vector<double> v = pack_signal(pair.z);
  const ForwardResult fw = forward(gen, v);
  const RawSignal gen_out = unpack_signal(fw.output);

  const SignalLoss c = content_loss(gen_out, pair.x, pair.mask);
  const SignalLoss a = adversarial_loss_g(disc, gen_out, cfg.mode);

  GeneratorLoss r;
  r.content = c.value;
  r.adversarial = a.value;
  r.total = c.value + cfg.lambda * a.value;
  r.disc_clamped = a.clamped;
  if (!std::isfinite(r.total))
    throw TrainingError("generator_loss: non-finite loss");

  const std::vector<double> cg = pack_signal(c.grad);
  const std::vector<double> ag = pack_signal(a.grad);
  std::vector<double> og(cg.size());
  for (std::size_t i = 0; i < og.size(); ++i) og[i] = cg[i] + cfg.lambda * ag[i];
  r.grads = backward(gen, fw.tape, og);
  return r;
}

struct DiscriminatorLoss {
  double value = 0.0;
  bool clamped = false;
  GradBundle grads;
};

/// Standard mode minimizes -[log D(x) + log(1 - D(gen_out))]; wgan mode
/// minimizes critic(gen_out) - critic(x). Gradients are with respect to the
/// discriminator only.
inline DiscriminatorLoss discriminator_loss(const RawSignal& x, const RawSignal& gen_out,
                                            const MlpParams& disc, TrainMode mode) {
  const std::vector<double> vx = pack_signal(x);
  const std::vector<double> vg = pack_signal(gen_out);
  if (vx.size() != disc.input_dim() || vg.size() != disc.input_dim())
    throw DimensionError("discriminator_loss: input dim mismatch");
  if (disc.output_dim() != 1)
    throw DimensionError("discriminator_loss: discriminator must output one value");

  const ForwardResult fx = forward(disc, vx);
  const ForwardResult fg = forward(disc, vg);
  const double dx = fx.output[0];
  const double dg = fg.output[0];

  DiscriminatorLoss r;
  double ogx = 0.0;
  double ogg = 0.0;
  if (mode == TrainMode::standard_gan) {
    double px = dx;
    if (!(px > kLogClamp)) {
      px = kLogClamp;
      r.clamped = true;
      ogx = 0.0;
    } else {
      ogx = -1.0 / px;
    }
    double qg = 1.0 - dg;
    if (!(qg > kLogClamp)) {
      qg = kLogClamp;
      r.clamped = true;
      ogg = 0.0;
    } else {
      ogg = 1.0 / qg;
    }
    r.value = -std::log(px) - std::log(qg);
  } else {
    r.value = dg - dx;
    ogx = -1.0;
    ogg = 1.0;
  }
  if (!std::isfinite(r.value))
    throw TrainingError("discriminator_loss: non-finite loss");

  r.grads = backward(disc, fx.tape, {ogx});
  grad_axpy(r.grads, 1.0, backward(disc, fg.tape, {ogg}));
  return r;
}

/// Recovery: pack the notched signal, run the generator, unpack. Takes no
/// mask; the trained network needs zero knowledge of the notch locations.
inline RawSignal recover(const MlpParams& gen, const RawSignal& z) {
  if (z.domain != Domain::time)
    throw DomainError("recover: expected a time-domain signal");
  const std::vector<double> v = pack_signal(z);
  if (v.size() != gen.input_dim())
    throw DimensionError("recover: signal length does not match the generator");
  return unpack_signal(forward(gen, v).output);
}

/// One pass over the data: per minibatch, critic_steps_per_gen_step
/// discriminator updates (clipped after each in wgan mode) followed by one
/// generator update. Pair order is shuffled deterministically per
/// (seed, epoch). Appends epoch-mean losses to the history.
inline EpochMetrics train_epoch(TrainerState& state,
                                const std::vector<TrainingPair>& pairs,
                                const TrainConfig& cfg) {
  cfg.validate();
  if (pairs.empty()) throw ConfigError("train_epoch: no training pairs");

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng shuffle_rng(derive_seed(cfg.seed, "shuffle", state.epoch));
  deterministic_shuffle(order, shuffle_rng);

  const std::size_t n = pairs.size();
  double content_sum = 0.0;
  double adv_sum = 0.0;
  double disc_sum = 0.0;
  std::size_t disc_evals = 0;

  for (std::size_t start = 0; start < n; start += cfg.batch_size) {
    const std::size_t stop = std::min(start + cfg.batch_size, n);
    const double inv = 1.0 / static_cast<double>(stop - start);

    for (std::size_t step = 0; step < cfg.critic_steps_per_gen_step; ++step) {
      GradBundle acc = zero_like(state.disc);
      for (std::size_t b = start; b < stop; ++b) {
        const TrainingPair& pr = pairs[order[b]];
        const RawSignal gen_out = recover(state.gen, pr.z);
        const DiscriminatorLoss dl =
            discriminator_loss(pr.x, gen_out, state.disc, cfg.mode);
        grad_axpy(acc, 1.0, dl.grads);
        disc_sum += dl.value;
        ++disc_evals;
      }
      grad_scale(acc, inv);
      optimizer_step(state.disc, acc, state.disc_opt);
      if (cfg.mode == TrainMode::wgan) clip_weights(state.disc, cfg.clip_c);
    }

    GradBundle gacc = zero_like(state.gen);
    for (std::size_t b = start; b < stop; ++b) {
      const GeneratorLoss gl =
          generator_loss(pairs[order[b]], state.gen, state.disc, cfg);
      grad_axpy(gacc, 1.0, gl.grads);
      content_sum += gl.content;
      adv_sum += gl.adversarial;
    }
    grad_scale(gacc, inv);
    optimizer_step(state.gen, gacc, state.gen_opt);
  }

  EpochMetrics m;
  m.content_loss = content_sum / static_cast<double>(n);
  m.adv_loss = adv_sum / static_cast<double>(n);
  m.disc_loss = disc_sum / static_cast<double>(disc_evals);
  if (!std::isfinite(m.content_loss) || !std::isfinite(m.adv_loss) ||
      !std::isfinite(m.disc_loss))
    throw TrainingError("train_epoch: non-finite epoch metrics");
  state.loss_history.push_back(m);
  state.epoch += 1;
  return m;
}

}  // namespace sargan
