#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace r22sdf {

enum class Rounding {
  truncate,   // floor (drop low bits of the two's-complement pattern)
  half_away,  // round to nearest, ties away from zero
};

std::string to_string(Rounding mode);
Rounding parse_rounding(const std::string& name);

// Two's-complement fixed-point layout. Formats are runtime values so that
// word lengths can be swept without recompiling.
struct FixedFormat {
  int word_bits = 16;
  int frac_bits = 15;

  // Throws std::invalid_argument unless 2 <= word_bits <= 64 and
  // 0 <= frac_bits <= word_bits - 1.
  static FixedFormat make(int word_bits, int frac_bits);

  std::int64_t min_raw() const;
  std::int64_t max_raw() const;
  double lsb() const;
  double min_value() const { return static_cast<double>(min_raw()) * lsb(); }
  double max_value() const { return static_cast<double>(max_raw()) * lsb(); }
  bool contains(std::int64_t raw) const { return raw >= min_raw() && raw <= max_raw(); }

  // Same binary point, `extra` more integer bits.
  FixedFormat widened(int extra = 1) const;

  friend bool operator==(const FixedFormat&, const FixedFormat&) = default;
};

inline constexpr FixedFormat kQ15{16, 15};

std::string to_string(const FixedFormat& f);

// Immutable fixed-point scalar. The raw value is always inside the format's
// range; the constructor throws std::out_of_range otherwise.
class Fixed {
 public:
  Fixed() = default;
  Fixed(std::int64_t raw, FixedFormat format);

  static Fixed zero(FixedFormat format) { return Fixed(0, format); }

  std::int64_t raw() const { return raw_; }
  const FixedFormat& format() const { return format_; }
  double to_real() const;

  // Sign-extends into a format with the same frac_bits and at least as many
  // word bits.
  Fixed extended(FixedFormat wider) const;

  friend bool operator==(const Fixed&, const Fixed&) = default;

 private:
  std::int64_t raw_ = 0;
  FixedFormat format_{kQ15};
};

std::ostream& operator<<(std::ostream& os, const Fixed& x);

struct Saturating {
  Fixed value;
  bool saturated = false;
};

Saturating quantize(double value, FixedFormat format, Rounding mode = Rounding::half_away);

// Exact sum/difference in word_bits + 1 (uses the wider operand's width).
Fixed add(const Fixed& a, const Fixed& b);
Fixed sub(const Fixed& a, const Fixed& b);

// Halves a grown value back into word_bits - 1 with one rounding step.
Fixed scale_half_round(const Fixed& a, Rounding mode = Rounding::half_away);

// Negating the most negative raw value saturates to max_raw.
Saturating negate(const Fixed& a);

// Shift right by `shift` bits with the given rounding. shift >= 0.
std::int64_t round_shift_right(std::int64_t v, int shift, Rounding mode);

// Largest two's-complement width needed for `raw` (at least 1).
int signed_bit_width(std::int64_t raw);

class ComplexFixed {
 public:
  ComplexFixed() = default;
  // Throws std::invalid_argument when re and im formats differ.
  ComplexFixed(Fixed re, Fixed im);

  static ComplexFixed zero(FixedFormat format) {
    return {Fixed::zero(format), Fixed::zero(format)};
  }
  static ComplexFixed from_raw(std::int64_t re, std::int64_t im, FixedFormat format) {
    return {Fixed(re, format), Fixed(im, format)};
  }

  const Fixed& re() const { return re_; }
  const Fixed& im() const { return im_; }
  const FixedFormat& format() const { return re_.format(); }

  ComplexFixed extended(FixedFormat wider) const {
    return {re_.extended(wider), im_.extended(wider)};
  }

  friend bool operator==(const ComplexFixed&, const ComplexFixed&) = default;

 private:
  Fixed re_;
  Fixed im_;
};

std::ostream& operator<<(std::ostream& os, const ComplexFixed& z);

}  // namespace r22sdf
