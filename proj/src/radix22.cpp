#include "r22sdf/radix22.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace r22sdf {

namespace {

void require_index_space(int n_points) {
  if (n_points < 4 || !is_power_of_two(static_cast<std::size_t>(n_points))) {
    throw std::invalid_argument("N must be a power of two >= 4, got " + std::to_string(n_points));
  }
}

void require_frame(std::size_t n) {
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument("frame length must be a power of two >= 8, got " + std::to_string(n));
  }
}

std::complex<double> unit_root(int n_points, long long exponent) {
  const long long k = ((exponent % n_points) + n_points) % n_points;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_points);
  return {std::cos(angle), std::sin(angle)};
}

Fixed combine(const Fixed& a, const Fixed& b, bool subtract, bool scale, Rounding rounding) {
  const Fixed grown = subtract ? sub(a, b) : add(a, b);
  return scale ? scale_half_round(grown, rounding) : grown;
}

}  // namespace

void DatapathConfig::validate() const {
  require_frame(static_cast<std::size_t>(n_points));
  (void)FixedFormat::make(format.word_bits, format.frac_bits);
  if (slicing.width() != format.word_bits) {
    throw std::invalid_argument("slice b*p = " + std::to_string(slicing.width()) +
                                " does not match word_bits " + std::to_string(format.word_bits));
  }
  (void)SliceConfig::make(slicing.blocks, slicing.bits_per_block);
  (void)quantize_twiddle(n_points, 0, format, twiddle_shift);
  // Widest product: grown data (word + stages + guard) times a grown twiddle.
  if (format.word_bits + 2 * std::countr_zero(static_cast<unsigned>(n_points)) + 2 > 62) {
    throw std::invalid_argument("word length too large for the 64-bit model");
  }
}

IndexTriple decompose_n(int n, int n_points) {
  require_index_space(n_points);
  if (n < 0 || n >= n_points) throw std::out_of_range("index n out of range");
  return {n / (n_points / 2), (n / (n_points / 4)) % 2, n % (n_points / 4)};
}

int compose_n(const IndexTriple& t, int n_points) {
  return ((n_points / 2) * t.first + (n_points / 4) * t.second + t.third) % n_points;
}

IndexTriple decompose_k(int k, int n_points) {
  require_index_space(n_points);
  if (k < 0 || k >= n_points) throw std::out_of_range("index k out of range");
  return {k % 2, (k / 2) % 2, k / 4};
}

int compose_k(const IndexTriple& t, int n_points) {
  return (t.first + 2 * t.second + 4 * t.third) % n_points;
}

DoubleFrame dft_reference(const DoubleFrame& x) {
  const int n = static_cast<int>(x.size());
  DoubleFrame out;
  out.domain = Domain::frequency;
  out.ordering = Ordering::natural;
  out.samples.assign(x.size(), {0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) acc += x[static_cast<std::size_t>(i)] * unit_root(n, static_cast<long long>(i) * k);
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

std::complex<double> bf1(std::complex<double> a, std::complex<double> b, int k1) {
  return k1 == 0 ? a + b : a - b;
}

std::complex<double> bf2(std::complex<double> a, std::complex<double> b, int k1, int k2) {
  switch ((k1 + 2 * k2) & 3) {
    case 0:
      return a + b;
    case 1:
      return {a.real() + b.imag(), a.imag() - b.real()};
    case 2:
      return a - b;
    default:
      return {a.real() - b.imag(), a.imag() + b.real()};
  }
}

ComplexFixed bf1(const ComplexFixed& a, const ComplexFixed& b, int k1, bool scale, Rounding rounding) {
  const bool subtract = k1 != 0;
  return {combine(a.re(), b.re(), subtract, scale, rounding), combine(a.im(), b.im(), subtract, scale, rounding)};
}

ComplexFixed bf2(const ComplexFixed& a, const ComplexFixed& b, int k1, int k2, bool scale, Rounding rounding) {
  const int e = (k1 + 2 * k2) & 3;
  // Odd powers of -j swap b's parts; the sign pattern picks add or subtract.
  const bool swap = (e & 1) != 0;
  const Fixed& b_for_re = swap ? b.im() : b.re();
  const Fixed& b_for_im = swap ? b.re() : b.im();
  const bool sub_re = e == 2 || e == 3;
  const bool sub_im = e == 1 || e == 2;
  return {combine(a.re(), b_for_re, sub_re, scale, rounding), combine(a.im(), b_for_im, sub_im, scale, rounding)};
}

DoubleFrame fft_r22_functional(const DoubleFrame& x, bool scaling) {
  require_frame(x.size());
  const int n = static_cast<int>(x.size());
  const double gain = scaling ? 0.5 : 1.0;
  std::vector<std::complex<double>> v = x.samples;

  int m = n;
  for (; m >= 4; m /= 4) {
    const int half = m / 2;
    const int quarter = m / 4;
    for (int base = 0; base < n; base += m) {
      for (int i = 0; i < half; ++i) {
        const auto a = v[base + i];
        const auto b = v[base + i + half];
        v[base + i] = gain * bf1(a, b, 0);
        v[base + i + half] = gain * bf1(a, b, 1);
      }
      for (int k1 = 0; k1 < 2; ++k1) {
        const int h = base + k1 * half;
        for (int i = 0; i < quarter; ++i) {
          const auto a = v[h + i];
          const auto b = v[h + i + quarter];
          v[h + i] = gain * bf2(a, b, k1, 0);
          v[h + i + quarter] = gain * bf2(a, b, k1, 1);
        }
      }
      if (m >= 8) {
        for (int r = 0; r < m; ++r) {
          const int k1 = r / half;
          const int k2 = (r / quarter) % 2;
          const int n3 = r % quarter;
          v[base + r] *= unit_root(n, static_cast<long long>(n / m) * n3 * (k1 + 2 * k2));
        }
      }
    }
  }
  if (m == 2) {
    for (int base = 0; base < n; base += 2) {
      const auto a = v[base];
      const auto b = v[base + 1];
      v[base] = gain * bf1(a, b, 0);
      v[base + 1] = gain * bf1(a, b, 1);
    }
  }
  return DoubleFrame{std::move(v), Domain::frequency, Ordering::bit_reversed};
}

FixedFrame fft_r22_functional(const FixedFrame& x, const DatapathConfig& config, MultiplyProbe* probe) {
  require_frame(x.size());
  const int n = static_cast<int>(x.size());
  if (n != config.n_points) throw std::invalid_argument("frame length does not match config N");
  const bool s1 = config.scale_bf1;
  const bool s2 = config.scale_bf2;
  const Rounding rnd = config.rounding;
  const CmulOptions cmul_opts = config.cmul_options();
  std::vector<ComplexFixed> v = x.samples;

  int m = n;
  for (; m >= 4; m /= 4) {
    const int half = m / 2;
    const int quarter = m / 4;
    for (int base = 0; base < n; base += m) {
      for (int i = 0; i < half; ++i) {
        const auto a = v[base + i];
        const auto b = v[base + i + half];
        v[base + i] = bf1(a, b, 0, s1, rnd);
        v[base + i + half] = bf1(a, b, 1, s1, rnd);
      }
      for (int k1 = 0; k1 < 2; ++k1) {
        const int h = base + k1 * half;
        for (int i = 0; i < quarter; ++i) {
          const auto a = v[h + i];
          const auto b = v[h + i + quarter];
          v[h + i] = bf2(a, b, k1, 0, s2, rnd);
          v[h + i + quarter] = bf2(a, b, k1, 1, s2, rnd);
        }
      }
      if (m >= 8) {
        for (int r = 0; r < m; ++r) {
          const int k1 = r / half;
          const int k2 = (r / quarter) % 2;
          const int n3 = r % quarter;
          const int exponent = (n / m) * n3 * (k1 + 2 * k2);
          const Twiddle w = quantize_twiddle(n, exponent, config.format, config.twiddle_shift);
          v[base + r] = cmul3(v[base + r], w, config.slicing, cmul_opts, probe);
        }
      }
    }
  }
  if (m == 2) {
    for (int base = 0; base < n; base += 2) {
      const auto a = v[base];
      const auto b = v[base + 1];
      v[base] = bf1(a, b, 0, s1, rnd);
      v[base + 1] = bf1(a, b, 1, s1, rnd);
    }
  }
  return FixedFrame{std::move(v), Domain::frequency, Ordering::bit_reversed};
}

}  // namespace r22sdf
