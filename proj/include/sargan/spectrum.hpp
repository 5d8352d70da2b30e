#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sargan/errors.hpp"
#include "sargan/rng.hpp"
#include "sargan/signal.hpp"

namespace sargan {

/// Per-frequency-bin availability: 1 = available, 0 = notched.
struct NotchMask {
  std::vector<std::uint8_t> bits;
  std::size_t band_width_bins = 0;
  double target_missing_fraction = 0.0;

  std::size_t size() const { return bits.size(); }
};

/// Drops notch bands of band_width_bins at uniformly random start bins
/// (overlap allowed, truncated at the top edge, no wraparound) until the
/// zeroed fraction first reaches or exceeds the target. Deterministic per
/// seed. Achieved fraction lies in [target, target + band_width_bins/n_bins).
inline NotchMask gen_notch_mask(std::size_t n_bins, std::size_t band_width_bins,
                                double target_missing_fraction, std::uint64_t seed) {
  if (band_width_bins < 1)
    throw ConfigError("gen_notch_mask: band width must be at least one bin");
  if (n_bins < 2 * band_width_bins)
    throw ConfigError("gen_notch_mask: mask length too small for the band width");
  if (!(target_missing_fraction > 0.0) || !(target_missing_fraction < 1.0))
    throw ConfigError("gen_notch_mask: target fraction must lie in (0, 1)");

  NotchMask m;
  m.bits.assign(n_bins, 1);
  m.band_width_bins = band_width_bins;
  m.target_missing_fraction = target_missing_fraction;

  Rng rng(seed);
  std::size_t zeros = 0;
  while (static_cast<double>(zeros) <
         target_missing_fraction * static_cast<double>(n_bins)) {
    const std::size_t start = rng.uniform_index(n_bins);
    const std::size_t stop = std::min(start + band_width_bins, n_bins);
    for (std::size_t k = start; k < stop; ++k) {
      if (m.bits[k]) {
        m.bits[k] = 0;
        ++zeros;
      }
    }
  }
  return m;
}

/// Fraction of notched bins.
inline double missing_fraction(const NotchMask& m) {
  if (m.bits.empty()) throw DimensionError("missing_fraction: empty mask");
  const auto zeros = std::count(m.bits.begin(), m.bits.end(), std::uint8_t{0});
  return static_cast<double>(zeros) / static_cast<double>(m.bits.size());
}

/// Notches a time-domain signal: zeroes the masked bins of its spectrum and
/// transforms back.
inline RawSignal apply_mask(const RawSignal& x, const NotchMask& m) {
  if (x.domain != Domain::time)
    throw DomainError("apply_mask: expected a time-domain signal");
  if (x.size() != m.size())
    throw DimensionError("apply_mask: mask length does not match signal length");
  RawSignal s = dft_forward(x);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!m.bits[k]) s.samples[k] = cplx(0.0, 0.0);
  }
  return dft_inverse(s);
}

/// Conventional zero-fill recovery: the contaminated bins are already zeroed
/// in notched data, so the baseline is the identity. Kept explicit so it shows
/// up as its own row in evaluation tables.
inline RawSignal zerofill_baseline(const RawSignal& z) {
  if (z.domain != Domain::time)
    throw DomainError("zerofill_baseline: expected a time-domain signal");
  return z;
}

}  // namespace sargan
