#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "r22sdf/radix22.hpp"
#include "r22sdf/signals.hpp"

using namespace r22sdf;

namespace {

using cd = std::complex<double>;

DoubleFrame random_frame(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DoubleFrame f;
  for (int i = 0; i < n; ++i) f.samples.emplace_back(u(rng), u(rng));
  return f;
}

double max_diff(const DoubleFrame& a, const DoubleFrame& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double sqnr_db(const DoubleFrame& ref, const DoubleFrame& got) {
  double s = 0.0;
  double e = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    s += std::norm(ref[i]);
    e += std::norm(ref[i] - got[i]);
  }
  return e == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(s / e);
}

}  // namespace

TEST_CASE("DFT reference examples") {
  DoubleFrame zeros;
  zeros.samples.assign(8, cd{});
  for (const auto& x : dft_reference(zeros).samples) CHECK(x == cd{});

  DoubleFrame impulse;
  impulse.samples.assign(8, cd{});
  impulse[0] = 1.0;
  for (const auto& x : dft_reference(impulse).samples) CHECK(std::abs(x - cd{1.0, 0.0}) < 1e-15);

  DoubleFrame cosine;
  for (int n = 0; n < 8; ++n) cosine.samples.emplace_back(std::cos(2.0 * std::numbers::pi * n / 8.0), 0.0);
  const DoubleFrame spectrum = dft_reference(cosine);
  CHECK(spectrum.domain == Domain::frequency);
  for (int k = 0; k < 8; ++k) {
    const double expected = (k == 1 || k == 7) ? 4.0 : 0.0;
    CHECK(std::abs(spectrum[k] - cd{expected, 0.0}) < 1e-12);
  }
}

TEST_CASE("index decomposition") {
  CHECK(decompose_n(5, 8) == IndexTriple{1, 0, 1});
  CHECK(decompose_k(6, 8) == IndexTriple{0, 1, 1});
  CHECK(compose_n({1, 0, 1}, 8) == 5);
  CHECK(compose_k({0, 1, 1}, 8) == 6);
  CHECK_THROWS(decompose_n(8, 8));
  CHECK_THROWS(decompose_k(-1, 8));

  for (int n_points = 8; n_points <= 256; n_points *= 2) {
    for (int i = 0; i < n_points; ++i) {
      REQUIRE(compose_n(decompose_n(i, n_points), n_points) == i);
      REQUIRE(compose_k(decompose_k(i, n_points), n_points) == i);
    }
  }
}

TEST_CASE("butterfly examples") {
  CHECK(bf1(cd{0.5, 0.25}, cd{-0.5, 0.75}, 0) == cd{0.0, 1.0});
  CHECK(bf1(cd{0.5, 0.25}, cd{-0.5, 0.75}, 1) == cd{1.0, -0.5});
  CHECK(bf2(cd{0.25, 0.5}, cd{0.5, 0.0}, 0, 0) == cd{0.75, 0.5});
  CHECK(bf2(cd{0.25, 0.5}, cd{0.5, 0.0}, 1, 1) == cd{0.25, 1.0});  // a + j b
  CHECK(bf2(cd{0.0, 0.0}, cd{0.5, 0.0}, 0, 1) == cd{-0.5, 0.0});   // a - b
  CHECK(bf2(cd{0.0, 0.0}, cd{0.5, 0.0}, 1, 0) == cd{0.0, -0.5});   // a - j b
}

TEST_CASE("fixed butterflies are exact when unscaled") {
  std::mt19937_64 rng(23);
  const FixedFormat q17 = FixedFormat::make(17, 15);
  for (int i = 0; i < 20000; ++i) {
    const auto a = ComplexFixed::from_raw(static_cast<std::int16_t>(rng()), static_cast<std::int16_t>(rng()), kQ15);
    const auto b = ComplexFixed::from_raw(static_cast<std::int16_t>(rng()), static_cast<std::int16_t>(rng()), kQ15);
    const cd da{a.re().to_real(), a.im().to_real()};
    const cd db{b.re().to_real(), b.im().to_real()};
    for (int k1 = 0; k1 < 2; ++k1) {
      const ComplexFixed y1 = bf1(a, b, k1, false, Rounding::half_away);
      REQUIRE(y1.format() == q17);
      REQUIRE(to_complex(y1) == bf1(da, db, k1));
      for (int k2 = 0; k2 < 2; ++k2) {
        const ComplexFixed y2 = bf2(a, b, k1, k2, false, Rounding::half_away);
        REQUIRE(to_complex(y2) == bf2(da, db, k1, k2));
        const ComplexFixed h = bf2(a, b, k1, k2, true, Rounding::half_away);
        REQUIRE(h.format() == kQ15);
        REQUIRE(std::abs(to_complex(h) - bf2(da, db, k1, k2) / 2.0) <= std::ldexp(1.0, -16) * std::sqrt(2.0));
      }
    }
  }
}

TEST_CASE("bit reversal") {
  CHECK(bit_reverse(1, 3) == 4);
  CHECK(bit_reverse(4, 3) == 1);
  CHECK(bit_reverse(3, 3) == 6);
  CHECK(bit_reverse(6, 3) == 3);
  CHECK(bit_reverse(0, 3) == 0);
  CHECK(bit_reverse(7, 3) == 7);

  for (int n = 2; n <= 1024; n *= 2) {
    DoubleFrame f;
    for (int i = 0; i < n; ++i) f.samples.emplace_back(i, -i);
    const DoubleFrame once = bit_reverse_permute(f);
    CHECK(once.ordering == Ordering::bit_reversed);
    const DoubleFrame twice = bit_reverse_permute(once);
    CHECK(twice == f);
  }
}

TEST_CASE("double model agrees with the DFT") {
  std::mt19937_64 rng(41);
  for (int n = 8; n <= 256; n *= 2) {
    for (int trial = 0; trial < 20; ++trial) {
      const DoubleFrame x = random_frame(n, rng);
      const DoubleFrame ref = dft_reference(x);
      const DoubleFrame raw = fft_r22_functional(x, false);
      CHECK(raw.ordering == Ordering::bit_reversed);
      const DoubleFrame got = to_natural_order(raw);
      REQUIRE(max_diff(ref, got) < 1e-9 * n);

      DoubleFrame scaled_ref = ref;
      for (auto& v : scaled_ref.samples) v /= static_cast<double>(n);
      REQUIRE(max_diff(scaled_ref, to_natural_order(fft_r22_functional(x, true))) < 1e-12);
    }
  }
}

TEST_CASE("linearity and Parseval of the double model") {
  std::mt19937_64 rng(43);
  for (int n : {8, 16, 32, 64}) {
    const DoubleFrame x = random_frame(n, rng);
    const DoubleFrame y = random_frame(n, rng);
    const cd alpha{0.3, -0.7};
    const cd beta{-1.1, 0.2};
    DoubleFrame mix;
    for (int i = 0; i < n; ++i) mix.samples.push_back(alpha * x[i] + beta * y[i]);
    const DoubleFrame fx = fft_r22_functional(x, false);
    const DoubleFrame fy = fft_r22_functional(y, false);
    const DoubleFrame fm = fft_r22_functional(mix, false);
    for (int i = 0; i < n; ++i) REQUIRE(std::abs(fm[i] - (alpha * fx[i] + beta * fy[i])) < 1e-12 * n);

    double et = 0.0;
    double ef = 0.0;
    for (int i = 0; i < n; ++i) {
      et += std::norm(x[i]);
      ef += std::norm(fx[i]);
    }
    CHECK(std::abs(et - ef / n) < 1e-12 * et);
  }
}

TEST_CASE("fixed model: impulse gives a flat spectrum") {
  DatapathConfig cfg;
  const FixedFrame x = quantize_frame(impulse_frame(8, 0.5), cfg.format);
  const FixedFrame y = fft_r22_functional(x, cfg);
  CHECK(y.ordering == Ordering::bit_reversed);
  for (const auto& v : y.samples) {
    CHECK(v.re().raw() == 2048);
    CHECK(v.im().raw() == 0);
  }
  // The double model with scaling reproduces the same value.
  for (const auto& v : fft_r22_functional(impulse_frame(8, 0.5), true).samples) CHECK(v == cd{0.0625, 0.0});
}

TEST_CASE("fixed model tracks the DFT and improves with word length") {
  const int frames = 50;
  const auto corpus = uniform_random_frames(16, frames, 8);
  double previous = -std::numeric_limits<double>::infinity();
  for (int w = 10; w <= 16; ++w) {
    DatapathConfig cfg;
    cfg.n_points = 16;
    cfg.format = FixedFormat::make(w, w - 1);
    cfg.slicing = SliceConfig::covering(w, 2);
    if (cfg.slicing.width() != w) cfg.slicing = SliceConfig{w, 1};
    DoubleFrame ref_all;
    DoubleFrame got_all;
    for (const auto& x : corpus) {
      const DoubleFrame ref = dft_reference(x);
      const FixedFrame y = fft_r22_functional(quantize_frame(x, cfg.format), cfg);
      const DoubleFrame got = to_natural_order(to_double_frame(y));
      for (std::size_t k = 0; k < ref.size(); ++k) {
        ref_all.samples.push_back(ref[k]);
        got_all.samples.push_back(got[k] * 16.0);
      }
    }
    const double s = sqnr_db(ref_all, got_all);
    CHECK(s >= previous - 0.1);
    previous = s;
  }
  CHECK(previous > 50.0);
}

TEST_CASE("fixed model multiplies only at twiddle slots") {
  DatapathConfig cfg;
  const auto frames = quantize_frames(uniform_random_frames(8, 4, 1), cfg.format);
  MultiplyProbe probe;
  for (const auto& x : frames) fft_r22_functional(x, cfg, &probe);
  CHECK(probe.multiplies == 4 * 3 * 3);  // exponents 1, 2, 3 per frame

  cfg.unity_bypass = false;
  MultiplyProbe all;
  for (const auto& x : frames) fft_r22_functional(x, cfg, &all);
  CHECK(all.multiplies == 4 * 8 * 3);
}

TEST_CASE("fixed model word growth without scaling") {
  DatapathConfig cfg;
  cfg.scale_bf1 = false;
  cfg.scale_bf2 = false;
  const FixedFrame y = fft_r22_functional(quantize_frame(impulse_frame(8, 0.5), cfg.format), cfg);
  CHECK(y[0].format() == FixedFormat::make(20, 15));
  for (const auto& v : y.samples) CHECK(v.re().raw() == 16384);

  DatapathConfig bad;
  bad.n_points = 12;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  DatapathConfig mismatch;
  mismatch.slicing = SliceConfig{3, 4};
  CHECK_THROWS_AS(mismatch.validate(), std::invalid_argument);
}
