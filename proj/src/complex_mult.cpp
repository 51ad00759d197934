#include "r22sdf/complex_mult.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace r22sdf {

namespace {

void require_fft_length(int n_points) {
  if (n_points < 8 || !std::has_single_bit(static_cast<unsigned>(n_points))) {
    throw std::invalid_argument("N must be a power of two >= 8, got " + std::to_string(n_points));
  }
}

int level_of_stage(int n_points, int stage) {
  return n_points >> (2 * stage);
}

}  // namespace

bool fits_signed(std::int64_t raw, int bits) {
  if (bits >= 64) return true;
  const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
  const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
  return raw >= lo && raw <= hi;
}

FixedFormat TwiddleRom::stored_format() const {
  return FixedFormat::make(stored_bits, source_format.frac_bits - shift);
}

Twiddle TwiddleRom::twiddle_at(int slot) const {
  const TwiddleEntry& e = entries.at(static_cast<std::size_t>(slot));
  return Twiddle{e.stored_re, e.stored_im, stored_format(), shift, e.exponent};
}

bool TwiddleRom::all_fit() const {
  for (const auto& e : entries) {
    if (!fits_signed(e.stored_re, stored_bits) || !fits_signed(e.stored_im, stored_bits)) return false;
  }
  return true;
}

Twiddle quantize_twiddle(int n_points, int exponent, FixedFormat format, int shift) {
  if (shift < 0 || shift > format.frac_bits || format.word_bits - shift < 2) {
    throw std::invalid_argument("twiddle shift " + std::to_string(shift) + " invalid for " +
                                to_string(format));
  }
  const int k = ((exponent % n_points) + n_points) % n_points;
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_points);
  const std::int64_t re = quantize(std::cos(angle), format).value.raw();
  const std::int64_t im = quantize(std::sin(angle), format).value.raw();
  const FixedFormat stored = FixedFormat::make(format.word_bits - shift, format.frac_bits - shift);
  return Twiddle{re >> shift, im >> shift, stored, shift, k};
}

int twiddle_stage_count(int n_points) {
  require_fft_length(n_points);
  int count = 0;
  for (int m = n_points; m >= 8; m >>= 2) ++count;
  return count;
}

int twiddle_exponent(int n_points, int stage, int slot) {
  const int m = level_of_stage(n_points, stage);
  const int r = slot % m;
  const int k1 = r / (m / 2);
  const int k2 = (r / (m / 4)) % 2;
  const int n3 = r % (m / 4);
  return (n_points / m) * n3 * (k1 + 2 * k2);
}

TwiddleRom gen_twiddle_rom(int n_points, int stage, FixedFormat format, int shift) {
  require_fft_length(n_points);
  if (stage < 0 || stage >= twiddle_stage_count(n_points)) {
    throw std::invalid_argument("N=" + std::to_string(n_points) + " has no twiddle stage " +
                                std::to_string(stage));
  }
  TwiddleRom rom;
  rom.n_points = n_points;
  rom.stage = stage;
  rom.level = level_of_stage(n_points, stage);
  rom.shift = shift;
  rom.stored_bits = format.word_bits - shift;
  rom.source_format = format;
  rom.entries.reserve(static_cast<std::size_t>(n_points));
  for (int slot = 0; slot < n_points; ++slot) {
    const int exponent = twiddle_exponent(n_points, stage, slot);
    const Twiddle exact = quantize_twiddle(n_points, exponent, format, 0);
    const Twiddle stored = quantize_twiddle(n_points, exponent, format, shift);
    rom.entries.push_back({slot, exponent, stored.re, stored.im, exact.re, exact.im});
  }
  return rom;
}

SlicedOperand slice_operand(const ComplexFixed& a, SliceConfig slicing) {
  const int p = slicing.bits_per_block;
  return SlicedOperand{slice_extended(sub(a.re(), a.im()), p), slice_extended(add(a.re(), a.im()), p),
                       slice_extended(a.im(), p), a.format().frac_bits};
}

WideComplex cmul3_full(const SlicedOperand& a, const Twiddle& w, MultiplyProbe* probe) {
  const std::int64_t p1 = shift_add_multiply_raw(a.diff, w.re, probe);
  const std::int64_t p2 = shift_add_multiply_raw(a.sum, w.im, probe);
  const std::int64_t p3 = shift_add_multiply_raw(a.imag, w.re - w.im, probe);
  return WideComplex{(p1 + p3) << w.shift, (p2 + p3) << w.shift, a.frac_bits + w.format.frac_bits + w.shift};
}

WideComplex cmul3_full(const ComplexFixed& a, const Twiddle& w, SliceConfig slicing, MultiplyProbe* probe) {
  return cmul3_full(slice_operand(a, slicing), w, probe);
}

WideComplex cmul_direct_full(const ComplexFixed& a, const Twiddle& w) {
  const std::int64_t ar = a.re().raw();
  const std::int64_t ai = a.im().raw();
  return WideComplex{(ar * w.re - ai * w.im) << w.shift, (ar * w.im + ai * w.re) << w.shift,
                     a.format().frac_bits + w.format.frac_bits + w.shift};
}

ComplexFixed cmul3(const ComplexFixed& a, const Twiddle& w, SliceConfig slicing, const CmulOptions& options,
                   MultiplyProbe* probe) {
  const FixedFormat out = a.format().widened();
  if (options.unity_bypass && w.exponent == 0) return a.extended(out);
  const WideComplex full = cmul3_full(a, w, slicing, probe);
  const int drop = full.frac_bits - a.format().frac_bits;
  return ComplexFixed(Fixed(round_shift_right(full.re, drop, options.rounding), out),
                      Fixed(round_shift_right(full.im, drop, options.rounding), out));
}

}  // namespace r22sdf
