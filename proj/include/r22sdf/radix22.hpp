#pragma once

#include <complex>

#include "r22sdf/complex_mult.hpp"
#include "r22sdf/digit_slicing.hpp"
#include "r22sdf/fixed_point.hpp"
#include "r22sdf/frame.hpp"

namespace r22sdf {

// Arithmetic configuration shared by the functional fixed-point model and
// the cycle-accurate pipeline. Defaults reproduce the 8-point, 16-bit,
// 4x4-sliced build with a 6-bit twiddle ROM shift.
struct DatapathConfig {
  int n_points = 8;
  FixedFormat format = kQ15;
  SliceConfig slicing{4, 4};
  Rounding rounding = Rounding::half_away;
  bool scale_bf1 = true;
  bool scale_bf2 = true;
  int twiddle_shift = 6;
  bool unity_bypass = true;

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
  CmulOptions cmul_options() const { return {rounding, unity_bypass}; }
};

struct IndexTriple {
  int first = 0;   // n1 / k1
  int second = 0;  // n2 / k2
  int third = 0;   // n3 / k3

  friend bool operator==(const IndexTriple&, const IndexTriple&) = default;
};

// n = (N/2) n1 + (N/4) n2 + n3
IndexTriple decompose_n(int n, int n_points);
int compose_n(const IndexTriple& t, int n_points);
// k = k1 + 2 k2 + 4 k3
IndexTriple decompose_k(int k, int n_points);
int compose_k(const IndexTriple& t, int n_points);

// Unscaled O(N^2) DFT in double precision.
DoubleFrame dft_reference(const DoubleFrame& x);

// x_a + (-1)^k1 x_b
std::complex<double> bf1(std::complex<double> a, std::complex<double> b, int k1);
// x_a + (-j)^(k1 + 2 k2) x_b
std::complex<double> bf2(std::complex<double> a, std::complex<double> b, int k1, int k2);

// Fixed-point butterflies: exact grown sum, then optionally halved. The -j
// rotation is a real/imaginary swap with add/sub exchange.
ComplexFixed bf1(const ComplexFixed& a, const ComplexFixed& b, int k1, bool scale, Rounding rounding);
ComplexFixed bf2(const ComplexFixed& a, const ComplexFixed& b, int k1, int k2, bool scale, Rounding rounding);

// Radix-2^2 DIF, output tagged bit-reversed. With scaling every butterfly
// halves, so the result is DFT / N.
DoubleFrame fft_r22_functional(const DoubleFrame& x, bool scaling);
FixedFrame fft_r22_functional(const FixedFrame& x, const DatapathConfig& config, MultiplyProbe* probe = nullptr);

}  // namespace r22sdf
