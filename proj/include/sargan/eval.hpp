#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "sargan/errors.hpp"
#include "sargan/signal.hpp"

namespace sargan {

/// RMS over complex moduli: ||x||_2 / sqrt(N).
inline double rms(const RawSignal& x) {
  if (x.samples.empty()) throw DimensionError("rms: empty signal");
  double sum = 0.0;
  for (const cplx& v : x.samples) sum += std::norm(v);
  return std::sqrt(sum / static_cast<double>(x.size()));
}

/// 20 log10( RMS(x) / RMS(xhat - x) ), +inf when xhat equals x exactly.
inline double snr_db(const RawSignal& x, const RawSignal& xhat) {
  if (x.size() != xhat.size()) throw DimensionError("snr_db: mismatched lengths");
  const double ref = rms(x);
  if (ref == 0.0) throw MetricError("snr_db: all-zero reference signal");
  double err_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    err_sum += std::norm(xhat.samples[i] - x.samples[i]);
  const double err = std::sqrt(err_sum / static_cast<double>(x.size()));
  if (err == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(ref / err);
}

struct PairEval {
  std::size_t index = 0;
  double snr_corrupted_db = 0.0;
  double snr_recovered_db = 0.0;
  double gain_db = 0.0;
};

struct EvalReport {
  double snr_corrupted_db = 0.0;
  double snr_recovered_db = 0.0;
  double gain_db = 0.0;
  std::vector<PairEval> pairs;
};

/// Single-trio report: SNR of the corrupted and the recovered signal against
/// the reference, and their difference.
inline EvalReport recovery_gain(const RawSignal& x, const RawSignal& z,
                                const RawSignal& zhat) {
  if (x.size() != z.size() || x.size() != zhat.size())
    throw DimensionError("recovery_gain: mismatched lengths");
  EvalReport r;
  r.snr_corrupted_db = snr_db(x, z);
  r.snr_recovered_db = snr_db(x, zhat);
  r.gain_db = r.snr_recovered_db - r.snr_corrupted_db;
  r.pairs.push_back({0, r.snr_corrupted_db, r.snr_recovered_db, r.gain_db});
  return r;
}

/// Dataset-level report. The headline SNR is computed over the concatenation
/// of all pairs (a single RMS ratio); per-pair values fill the breakdown.
inline EvalReport recovery_gain(const std::vector<RawSignal>& xs,
                                const std::vector<RawSignal>& zs,
                                const std::vector<RawSignal>& zhats) {
  if (xs.size() != zs.size() || xs.size() != zhats.size())
    throw DimensionError("recovery_gain: mismatched pair counts");
  if (xs.empty()) throw DimensionError("recovery_gain: no pairs");

  RawSignal cx{{}, Domain::time}, cz{{}, Domain::time}, ch{{}, Domain::time};
  EvalReport r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    PairEval pe;
    pe.index = i;
    pe.snr_corrupted_db = snr_db(xs[i], zs[i]);
    pe.snr_recovered_db = snr_db(xs[i], zhats[i]);
    pe.gain_db = pe.snr_recovered_db - pe.snr_corrupted_db;
    r.pairs.push_back(pe);
    cx.samples.insert(cx.samples.end(), xs[i].samples.begin(), xs[i].samples.end());
    cz.samples.insert(cz.samples.end(), zs[i].samples.begin(), zs[i].samples.end());
    ch.samples.insert(ch.samples.end(), zhats[i].samples.begin(), zhats[i].samples.end());
  }
  r.snr_corrupted_db = snr_db(cx, cz);
  r.snr_recovered_db = snr_db(cx, ch);
  r.gain_db = r.snr_recovered_db - r.snr_corrupted_db;
  return r;
}

/// Normalized down-range profile: 20 log10(|x_i| / max_j |x_j|), floored at
/// -120 dB. The peak bin sits at 0 dB.
inline std::vector<double> downrange_profile_db(const RawSignal& x) {
  if (x.samples.empty()) throw DimensionError("downrange_profile_db: empty signal");
  double peak = 0.0;
  for (const cplx& v : x.samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw MetricError("downrange_profile_db: all-zero signal");

  constexpr double kFloorDb = -120.0;
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x.samples[i]);
    out[i] = mag == 0.0 ? kFloorDb
                        : std::max(kFloorDb, 20.0 * std::log10(mag / peak));
  }
  return out;
}

}  // namespace sargan
