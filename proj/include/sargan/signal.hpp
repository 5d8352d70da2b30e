#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "sargan/errors.hpp"
#include "sargan/rng.hpp"

namespace sargan {

using cplx = std::complex<double>;

enum class Domain : std::uint8_t { time = 0, frequency = 1 };

/// Fixed-length complex range profile, tagged with the domain it lives in.
struct RawSignal {
  std::vector<cplx> samples;
  Domain domain = Domain::time;

  std::size_t size() const { return samples.size(); }
};

/// Operating band of the radar. DFT bin k maps to f_low + k * freq_resolution
/// for k below in_band_bins(); higher bins are out of band and carry no energy
/// in rendered signals.
struct BandParams {
  double f_low_hz = 380e6;
  double f_high_hz = 2.08e9;
  double freq_resolution_hz = (2.08e9 - 380e6) / 256.0;

  std::size_t in_band_bins() const {
    return static_cast<std::size_t>(
        std::llround((f_high_hz - f_low_hz) / freq_resolution_hz));
  }

  /// Band whose in-band bins exactly fill an n-bin DFT.
  static BandParams spanning(std::size_t n_bins) {
    BandParams b;
    b.freq_resolution_hz = (b.f_high_hz - b.f_low_hz) / static_cast<double>(n_bins);
    return b;
  }

  void validate() const {
    if (!(f_low_hz < f_high_hz))
      throw ConfigError("band: f_low must be below f_high");
    if (!(freq_resolution_hz > 0.0))
      throw ConfigError("band: freq_resolution must be positive");
    if (in_band_bins() < 2)
      throw ConfigError("band: fewer than two in-band bins");
  }
};

/// Single scatterer: fractional down-range position (in samples), real
/// amplitude and a phase in [0, 2pi).
struct PointTarget {
  double position = 0.0;
  double amplitude = 1.0;
  double phase = 0.0;
};

struct Scene {
  std::vector<PointTarget> targets;
  std::size_t n_samples = 0;
  BandParams band;

  void validate() const {
    band.validate();
    if (targets.empty()) throw ConfigError("scene: needs at least one target");
    if (band.in_band_bins() > n_samples)
      throw ConfigError("scene: more in-band bins than signal samples");
    for (const PointTarget& t : targets) {
      if (!(t.position >= 0.0) || !(t.position < static_cast<double>(n_samples)))
        throw ConfigError("scene: target position outside [0, n_samples)");
      if (!std::isfinite(t.amplitude) || t.amplitude == 0.0)
        throw ConfigError("scene: target amplitude must be finite and nonzero");
    }
  }
};

/// Random scene: positions uniform on [0, n_samples), amplitudes uniform on
/// [0.5, 1.5], phases uniform on [0, 2pi). Deterministic per seed; each target
/// draws position, then amplitude, then phase.
inline Scene synth_scene(std::size_t n_targets, std::size_t n_samples,
                         const BandParams& band, std::uint64_t seed) {
  if (n_targets < 1) throw ConfigError("synth_scene: need at least one target");
  if (n_samples < 8) throw ConfigError("synth_scene: n_samples must be at least 8");
  band.validate();
  if (band.in_band_bins() > n_samples)
    throw ConfigError("synth_scene: more in-band bins than signal samples");

  Rng rng(seed);
  Scene scene;
  scene.n_samples = n_samples;
  scene.band = band;
  scene.targets.reserve(n_targets);
  for (std::size_t i = 0; i < n_targets; ++i) {
    PointTarget t;
    t.position = rng.uniform(0.0, static_cast<double>(n_samples));
    t.amplitude = rng.uniform(0.5, 1.5);
    t.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    scene.targets.push_back(t);
  }
  return scene;
}

namespace detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform, unscaled. sign = -1 forward, +1 inverse.
inline void fft_radix2(std::vector<cplx>& a, double sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

/// O(n^2) summation for lengths that are not powers of two.
inline std::vector<cplx> dft_direct(const std::vector<cplx>& a, double sign) {
  const std::size_t n = a.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx sum(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(k) *
                         static_cast<double>(j) / static_cast<double>(n);
      sum += a[j] * cplx(std::cos(ang), std::sin(ang));
    }
    out[k] = sum;
  }
  return out;
}

inline std::vector<cplx> unitary_transform(std::vector<cplx> a, double sign) {
  if (is_pow2(a.size())) {
    fft_radix2(a, sign);
  } else {
    a = dft_direct(a, sign);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(a.size()));
  for (cplx& v : a) v *= scale;
  return a;
}

}  // namespace detail

/// Unitary DFT, 1/sqrt(N) scaling in both directions so Parseval holds.
inline RawSignal dft_forward(const RawSignal& x) {
  if (x.domain != Domain::time)
    throw DomainError("dft_forward: expected a time-domain signal");
  if (x.samples.empty()) throw DimensionError("dft_forward: empty signal");
  return {detail::unitary_transform(x.samples, -1.0), Domain::frequency};
}

inline RawSignal dft_inverse(const RawSignal& s) {
  if (s.domain != Domain::frequency)
    throw DomainError("dft_inverse: expected a frequency-domain signal");
  if (s.samples.empty()) throw DimensionError("dft_inverse: empty signal");
  return {detail::unitary_transform(s.samples, +1.0), Domain::time};
}

/// Sum of delayed band-limited impulses. Each target contributes
/// amplitude * e^{i phase} on every in-band bin, delayed by a linear phase
/// ramp (exact for fractional positions); out-of-band bins stay zero.
inline RawSignal render_raw(const Scene& scene) {
  scene.validate();
  const std::size_t n = scene.n_samples;
  const std::size_t nb = scene.band.in_band_bins();
  RawSignal spec{std::vector<cplx>(n, cplx(0.0, 0.0)), Domain::frequency};
  for (const PointTarget& t : scene.targets) {
    const cplx gain = t.amplitude * cplx(std::cos(t.phase), std::sin(t.phase));
    for (std::size_t k = 0; k < nb; ++k) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) *
                         t.position / static_cast<double>(n);
      spec.samples[k] += gain * cplx(std::cos(ang), std::sin(ang));
    }
  }
  return dft_inverse(spec);
}

}  // namespace sargan
