#include "r22sdf/fixed_point.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace r22sdf {

std::string to_string(Rounding mode) {
  switch (mode) {
    case Rounding::truncate:
      return "truncate";
    case Rounding::half_away:
      return "half-away";
  }
  return "?";
}

Rounding parse_rounding(const std::string& name) {
  if (name == "truncate" || name == "trunc" || name == "floor") return Rounding::truncate;
  if (name == "half-away" || name == "half_away" || name == "round") return Rounding::half_away;
  throw std::invalid_argument("unknown rounding mode '" + name + "'");
}

FixedFormat FixedFormat::make(int word_bits, int frac_bits) {
  if (word_bits < 2 || word_bits > 64) {
    throw std::invalid_argument("word_bits must be in [2, 64], got " + std::to_string(word_bits));
  }
  if (frac_bits < 0 || frac_bits > word_bits - 1) {
    throw std::invalid_argument("frac_bits must be in [0, word_bits-1], got " +
                                std::to_string(frac_bits));
  }
  return FixedFormat{word_bits, frac_bits};
}

std::int64_t FixedFormat::min_raw() const {
  if (word_bits == 64) return INT64_MIN;
  return -(std::int64_t{1} << (word_bits - 1));
}

std::int64_t FixedFormat::max_raw() const {
  if (word_bits == 64) return INT64_MAX;
  return (std::int64_t{1} << (word_bits - 1)) - 1;
}

double FixedFormat::lsb() const { return std::ldexp(1.0, -frac_bits); }

FixedFormat FixedFormat::widened(int extra) const {
  return make(word_bits + extra, frac_bits);
}

std::string to_string(const FixedFormat& f) {
  std::ostringstream os;
  os << "Q" << (f.word_bits - f.frac_bits) << "." << f.frac_bits;
  return os.str();
}

Fixed::Fixed(std::int64_t raw, FixedFormat format) : raw_(raw), format_(format) {
  if (!format.contains(raw)) {
    throw std::out_of_range("raw " + std::to_string(raw) + " outside " + to_string(format));
  }
}

double Fixed::to_real() const { return std::ldexp(static_cast<double>(raw_), -format_.frac_bits); }

Fixed Fixed::extended(FixedFormat wider) const {
  if (wider.frac_bits != format_.frac_bits || wider.word_bits < format_.word_bits) {
    throw std::invalid_argument("cannot extend " + to_string(format_) + " to " + to_string(wider));
  }
  return Fixed(raw_, wider);
}

std::ostream& operator<<(std::ostream& os, const Fixed& x) {
  return os << x.raw() << "@" << to_string(x.format());
}

Saturating quantize(double value, FixedFormat format, Rounding mode) {
  if (std::isnan(value)) throw std::invalid_argument("cannot quantize NaN");
  const double scaled = std::ldexp(value, format.frac_bits);
  const double rounded = mode == Rounding::truncate ? std::floor(scaled) : std::round(scaled);
  // Compare in double; the bounds are exact powers of two (minus one LSB for max).
  if (rounded < static_cast<double>(format.min_raw())) return {Fixed(format.min_raw(), format), true};
  if (rounded >= std::ldexp(1.0, format.word_bits - 1)) return {Fixed(format.max_raw(), format), true};
  return {Fixed(static_cast<std::int64_t>(rounded), format), false};
}

namespace {

FixedFormat common_format(const Fixed& a, const Fixed& b) {
  if (a.format().frac_bits != b.format().frac_bits) {
    throw std::invalid_argument("binary point mismatch: " + to_string(a.format()) + " vs " +
                                to_string(b.format()));
  }
  return a.format().word_bits >= b.format().word_bits ? a.format() : b.format();
}

}  // namespace

Fixed add(const Fixed& a, const Fixed& b) {
  const FixedFormat out = common_format(a, b).widened();
  return Fixed(a.raw() + b.raw(), out);
}

Fixed sub(const Fixed& a, const Fixed& b) {
  const FixedFormat out = common_format(a, b).widened();
  return Fixed(a.raw() - b.raw(), out);
}

Fixed scale_half_round(const Fixed& a, Rounding mode) {
  const FixedFormat out = FixedFormat::make(a.format().word_bits - 1, a.format().frac_bits);
  const std::int64_t r = round_shift_right(a.raw(), 1, mode);
  // Only the most positive odd values can round past the narrowed range.
  if (r > out.max_raw()) return Fixed(out.max_raw(), out);
  return Fixed(r, out);
}

Saturating negate(const Fixed& a) {
  if (a.raw() == a.format().min_raw()) return {Fixed(a.format().max_raw(), a.format()), true};
  return {Fixed(-a.raw(), a.format()), false};
}

std::int64_t round_shift_right(std::int64_t v, int shift, Rounding mode) {
  if (shift < 0 || shift > 63) throw std::invalid_argument("shift out of range");
  if (shift == 0) return v;
  if (mode == Rounding::truncate) return v >> shift;
  const __int128 half = static_cast<__int128>(1) << (shift - 1);
  const __int128 wide = v;
  if (wide >= 0) return static_cast<std::int64_t>((wide + half) >> shift);
  return static_cast<std::int64_t>(-((-wide + half) >> shift));
}

int signed_bit_width(std::int64_t raw) {
  const auto mag = static_cast<std::uint64_t>(raw < 0 ? ~raw : raw);
  return static_cast<int>(std::bit_width(mag)) + 1;
}

ComplexFixed::ComplexFixed(Fixed re, Fixed im) : re_(re), im_(im) {
  if (!(re.format() == im.format())) {
    throw std::invalid_argument("complex parts differ in format");
  }
}

std::ostream& operator<<(std::ostream& os, const ComplexFixed& z) {
  return os << "(" << z.re().raw() << ", " << z.im().raw() << ")@" << to_string(z.format());
}

}  // namespace r22sdf
