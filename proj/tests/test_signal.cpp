#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "sargan/signal.hpp"

using namespace sargan;

namespace {

RawSignal random_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  RawSignal x{std::vector<cplx>(n), Domain::time};
  for (auto& v : x.samples) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return x;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double energy(const std::vector<cplx>& a) {
  double e = 0.0;
  for (const cplx& v : a) e += std::norm(v);
  return e;
}

}  // namespace

TEST_CASE("dft_forward of a unit impulse is a flat spectrum") {
  RawSignal x{{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)}, Domain::time};
  const RawSignal s = dft_forward(x);
  REQUIRE(s.domain == Domain::frequency);
  for (const cplx& v : s.samples) {
    REQUIRE(v.real() == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(v.imag() == Catch::Approx(0.0).margin(1e-15));
  }
}

TEST_CASE("dft_forward of a constant signal concentrates at DC") {
  RawSignal x{{cplx(1, 0), cplx(1, 0), cplx(1, 0), cplx(1, 0)}, Domain::time};
  const RawSignal s = dft_forward(x);
  REQUIRE(s.samples[0].real() == Catch::Approx(2.0).margin(1e-14));
  for (std::size_t k = 1; k < 4; ++k) REQUIRE(std::abs(s.samples[k]) < 1e-14);
}

TEST_CASE("dft matches the direct-summation oracle") {
  for (std::size_t n : {4u, 8u, 16u, 64u}) {
    const RawSignal x = random_signal(n, 100 + n);
    const RawSignal s = dft_forward(x);
    const auto ref = oracles::dft_direct_sum(x.samples, -1.0);
    REQUIRE(max_abs_diff(s.samples, ref) < 1e-12);

    const RawSignal back = dft_inverse(s);
    const auto ref_inv = oracles::dft_direct_sum(s.samples, +1.0);
    REQUIRE(max_abs_diff(back.samples, ref_inv) < 1e-12);
  }
}

TEST_CASE("dft handles non-power-of-two lengths") {
  const RawSignal x = random_signal(12, 7);
  const RawSignal s = dft_forward(x);
  const auto ref = oracles::dft_direct_sum(x.samples, -1.0);
  REQUIRE(max_abs_diff(s.samples, ref) < 1e-12);
  REQUIRE(max_abs_diff(dft_inverse(s).samples, x.samples) < 1e-12);
}

TEST_CASE("dft round trip and Parseval at N=256") {
  const RawSignal x = random_signal(256, 42);
  const RawSignal s = dft_forward(x);
  REQUIRE(max_abs_diff(dft_inverse(s).samples, x.samples) < 1e-9);

  const double ex = energy(x.samples);
  const double es = energy(s.samples);
  REQUIRE(std::abs(ex - es) / ex < 1e-10);
}

TEST_CASE("dft of a zero spectrum is a zero signal") {
  RawSignal s{std::vector<cplx>(16, cplx(0, 0)), Domain::frequency};
  const RawSignal x = dft_inverse(s);
  for (const cplx& v : x.samples) REQUIRE(std::abs(v) == 0.0);
}

TEST_CASE("dft_inverse of (2,0,0,0) is the constant signal") {
  RawSignal s{{cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(0, 0)}, Domain::frequency};
  const RawSignal x = dft_inverse(s);
  REQUIRE(x.domain == Domain::time);
  for (const cplx& v : x.samples)
    REQUIRE(v.real() == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("dft rejects signals in the wrong domain") {
  RawSignal t = random_signal(8, 1);
  RawSignal f = dft_forward(t);
  REQUIRE_THROWS_AS(dft_forward(f), DomainError);
  REQUIRE_THROWS_AS(dft_inverse(t), DomainError);
}

TEST_CASE("dft is linear") {
  const RawSignal x = random_signal(32, 11);
  const RawSignal y = random_signal(32, 12);
  const cplx a(1.3, -0.4), b(-0.7, 2.1);
  RawSignal mix{std::vector<cplx>(32), Domain::time};
  for (std::size_t i = 0; i < 32; ++i)
    mix.samples[i] = a * x.samples[i] + b * y.samples[i];
  const RawSignal lhs = dft_forward(mix);
  const RawSignal fx = dft_forward(x);
  const RawSignal fy = dft_forward(y);
  for (std::size_t k = 0; k < 32; ++k) {
    const cplx rhs = a * fx.samples[k] + b * fy.samples[k];
    REQUIRE(std::abs(lhs.samples[k] - rhs) < 1e-10);
  }
}

TEST_CASE("synth_scene is deterministic and respects ranges") {
  const BandParams band = BandParams::spanning(256);

  const Scene s1 = synth_scene(1, 256, band, 7);
  const Scene s2 = synth_scene(1, 256, band, 7);
  REQUIRE(s1.targets.size() == 1);
  REQUIRE(s1.targets[0].position == s2.targets[0].position);
  REQUIRE(s1.targets[0].amplitude == s2.targets[0].amplitude);
  REQUIRE(s1.targets[0].phase == s2.targets[0].phase);

  const Scene many = synth_scene(20, 256, band, 3);
  REQUIRE(many.targets.size() == 20);
  for (const PointTarget& t : many.targets) {
    REQUIRE(t.position >= 0.0);
    REQUIRE(t.position < 256.0);
    REQUIRE(t.amplitude >= 0.5);
    REQUIRE(t.amplitude <= 1.5);
    REQUIRE(t.phase >= 0.0);
    REQUIRE(t.phase < 2.0 * std::numbers::pi);
  }
}

TEST_CASE("synth_scene with different seeds yields different scenes") {
  const BandParams band = BandParams::spanning(64);
  const Scene a = synth_scene(5, 64, band, 1);
  const Scene b = synth_scene(5, 64, band, 2);
  bool any_differ = false;
  for (std::size_t i = 0; i < 5; ++i)
    any_differ = any_differ || a.targets[i].position != b.targets[i].position;
  REQUIRE(any_differ);
}

TEST_CASE("synth_scene rejects an invalid band") {
  BandParams bad = BandParams::spanning(64);
  bad.f_low_hz = bad.f_high_hz + 1.0;
  REQUIRE_THROWS_AS(synth_scene(1, 64, bad, 0), ConfigError);
}

TEST_CASE("render_raw of a target at zero delay has a flat in-band spectrum") {
  BandParams band = BandParams::spanning(64);
  band.freq_resolution_hz = (band.f_high_hz - band.f_low_hz) / 48.0;  // 48 of 64 bins in band
  Scene scene{{PointTarget{0.0, 1.0, 0.0}}, 64, band};
  const RawSignal x = render_raw(scene);
  const RawSignal s = dft_forward(x);
  for (std::size_t k = 0; k < 48; ++k)
    REQUIRE(std::abs(s.samples[k]) == Catch::Approx(1.0).margin(1e-12));
  for (std::size_t k = 48; k < 64; ++k) REQUIRE(std::abs(s.samples[k]) < 1e-12);
}

TEST_CASE("render_raw is linear in target amplitudes") {
  const BandParams band = BandParams::spanning(64);
  Scene scene = synth_scene(4, 64, band, 21);
  const RawSignal x = render_raw(scene);
  Scene doubled = scene;
  for (PointTarget& t : doubled.targets) t.amplitude *= 2.0;
  const RawSignal y = render_raw(doubled);
  for (std::size_t i = 0; i < x.size(); ++i)
    REQUIRE(std::abs(y.samples[i] - 2.0 * x.samples[i]) < 1e-12);
}

TEST_CASE("render_raw superposes single-target renders") {
  const BandParams band = BandParams::spanning(64);
  const Scene scene = synth_scene(2, 64, band, 33);
  const RawSignal both = render_raw(scene);
  const Scene first{{scene.targets[0]}, 64, band};
  const Scene second{{scene.targets[1]}, 64, band};
  const RawSignal a = render_raw(first);
  const RawSignal b = render_raw(second);
  for (std::size_t i = 0; i < both.size(); ++i)
    REQUIRE(std::abs(both.samples[i] - (a.samples[i] + b.samples[i])) < 1e-12);
}

TEST_CASE("render_raw output has positive energy and is reproducible") {
  const BandParams band = BandParams::spanning(128);
  const Scene scene = synth_scene(5, 128, band, 9);
  const RawSignal x = render_raw(scene);
  const RawSignal y = render_raw(scene);
  REQUIRE(energy(x.samples) > 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE(x.samples[i].real() == y.samples[i].real());
    REQUIRE(x.samples[i].imag() == y.samples[i].imag());
  }
}
