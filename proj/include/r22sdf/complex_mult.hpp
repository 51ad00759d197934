#pragma once

#include <cstdint>
#include <vector>

#include "r22sdf/digit_slicing.hpp"
#include "r22sdf/fixed_point.hpp"

namespace r22sdf {

// A twiddle constant as the multiplier sees it: raw components in the
// narrowed storage format, plus the right shift applied before storage.
struct Twiddle {
  std::int64_t re = 0;
  std::int64_t im = 0;
  FixedFormat format{16, 15};  // storage format (frac = source frac - shift)
  int shift = 0;
  int exponent = -1;  // k of W_N^k for ROM constants, -1 otherwise; drives the unity bypass
};

struct TwiddleEntry {
  int slot = 0;           // clock slot within a frame
  int exponent = 0;       // k of W_N^k
  std::int64_t stored_re = 0;
  std::int64_t stored_im = 0;
  std::int64_t exact_re = 0;  // round(cos) at the source format, before the shift
  std::int64_t exact_im = 0;
};

struct TwiddleRom {
  int n_points = 0;
  int stage = 0;   // index of the twiddle multiplier in the pipeline
  int level = 0;   // sub-transform length M at that multiplier
  int shift = 0;
  int stored_bits = 0;
  FixedFormat source_format{};
  std::vector<TwiddleEntry> entries;

  FixedFormat stored_format() const;
  Twiddle twiddle_at(int slot) const;
  bool all_fit() const;
};

bool fits_signed(std::int64_t raw, int bits);

// Quantizes W_N^exponent at `format` (round to nearest, saturating) and
// arithmetically shifts each component right by `shift`.
Twiddle quantize_twiddle(int n_points, int exponent, FixedFormat format, int shift);

// Number of twiddle multipliers in the radix-2^2 pipeline for N points.
int twiddle_stage_count(int n_points);

// Exponent of W_N consumed at `slot` (stream position within a frame) by
// twiddle multiplier `stage`.
int twiddle_exponent(int n_points, int stage, int slot);

// Throws std::invalid_argument for a non power-of-two N < 8, a stage that has
// no multiplier, or a shift that leaves fewer than 2 stored bits.
TwiddleRom gen_twiddle_rom(int n_points, int stage, FixedFormat format, int shift);

// Full-precision complex product with shift compensation applied: both
// components are exact and carry `frac_bits` fraction bits.
struct WideComplex {
  std::int64_t re = 0;
  std::int64_t im = 0;
  int frac_bits = 0;

  friend bool operator==(const WideComplex&, const WideComplex&) = default;
};

// Data-side operands of the three-product form, sliced once per sample:
// a_r - a_i, a_r + a_i and a_i (the first two carry one growth bit).
struct SlicedOperand {
  SlicedWord diff;
  SlicedWord sum;
  SlicedWord imag;
  int frac_bits = 0;
};

SlicedOperand slice_operand(const ComplexFixed& a, SliceConfig slicing);

// Three shift-add products per call:
//   re = w_r (a_r - a_i) + a_i (w_r - w_i)
//   im = w_i (a_r + a_i) + a_i (w_r - w_i)
// The data-side factor is the sliced operand; `slicing` supplies p.
WideComplex cmul3_full(const ComplexFixed& a, const Twiddle& w, SliceConfig slicing,
                       MultiplyProbe* probe = nullptr);
WideComplex cmul3_full(const SlicedOperand& a, const Twiddle& w, MultiplyProbe* probe = nullptr);

// Four-product reference used only for verification.
WideComplex cmul_direct_full(const ComplexFixed& a, const Twiddle& w);

struct CmulOptions {
  Rounding rounding = Rounding::half_away;
  bool unity_bypass = true;  // pass data through when exponent == 0
};

// Rounded once back to a.frac_bits. The result keeps one guard bit
// (a.word_bits + 1) since a complex rotation can grow a component by sqrt(2).
ComplexFixed cmul3(const ComplexFixed& a, const Twiddle& w, SliceConfig slicing,
                   const CmulOptions& options = {}, MultiplyProbe* probe = nullptr);

}  // namespace r22sdf
