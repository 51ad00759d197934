#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "r22sdf/fixed_point.hpp"

using namespace r22sdf;

TEST_CASE("format validation and range") {
  CHECK_THROWS_AS(FixedFormat::make(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(FixedFormat::make(65, 10), std::invalid_argument);
  CHECK_THROWS_AS(FixedFormat::make(16, 16), std::invalid_argument);
  CHECK_THROWS_AS(FixedFormat::make(16, -1), std::invalid_argument);

  const FixedFormat q15 = FixedFormat::make(16, 15);
  CHECK(q15.min_raw() == -32768);
  CHECK(q15.max_raw() == 32767);
  CHECK(q15.min_value() == -1.0);
  CHECK(q15.max_value() == 1.0 - std::ldexp(1.0, -15));

  const FixedFormat q4 = FixedFormat::make(16, 12);
  CHECK(q4.min_value() == -8.0);
  CHECK(q4.max_value() == 8.0 - std::ldexp(1.0, -12));

  const FixedFormat w64 = FixedFormat::make(64, 63);
  CHECK(w64.min_raw() == INT64_MIN);
  CHECK(w64.max_raw() == INT64_MAX);
  CHECK_THROWS(w64.widened());
}

TEST_CASE("construction enforces range") {
  CHECK_THROWS_AS(Fixed(32768, kQ15), std::out_of_range);
  CHECK_THROWS_AS(Fixed(-32769, kQ15), std::out_of_range);
  CHECK(Fixed(-32768, kQ15).to_real() == -1.0);
  CHECK_THROWS_AS(ComplexFixed(Fixed(0, kQ15), Fixed(0, FixedFormat::make(17, 15))), std::invalid_argument);
}

TEST_CASE("quantize") {
  CHECK(quantize(0.0, kQ15).value.raw() == 0);
  CHECK(quantize(-1.0, kQ15).value.raw() == -32768);
  CHECK_FALSE(quantize(-1.0, kQ15).saturated);
  // round(0.70710678 * 2^15) = round(23170.47...) = 23170
  CHECK(quantize(0.70710678, kQ15).value.raw() == 23170);
  CHECK(quantize(-0.70710678, kQ15).value.raw() == -23170);
  CHECK(quantize(-0.70710678, kQ15, Rounding::truncate).value.raw() == -23171);
  CHECK(quantize(0.5 * std::ldexp(1.0, -15), kQ15).value.raw() == 1);  // tie goes away from zero
  CHECK(quantize(-0.5 * std::ldexp(1.0, -15), kQ15).value.raw() == -1);

  SUBCASE("saturation is flagged") {
    const auto hi = quantize(1.0, kQ15);
    CHECK(hi.saturated);
    CHECK(hi.value.raw() == 32767);
    const auto lo = quantize(-1.5, kQ15);
    CHECK(lo.saturated);
    CHECK(lo.value.raw() == -32768);
    CHECK_FALSE(quantize(1.0 - std::ldexp(1.0, -15), kQ15).saturated);
  }
  CHECK_THROWS_AS(quantize(std::nan(""), kQ15), std::invalid_argument);
}

TEST_CASE("quantize round-trips every raw value up to 16 bits") {
  for (const FixedFormat fmt : {FixedFormat::make(16, 15), FixedFormat::make(16, 12), FixedFormat::make(8, 7),
                                FixedFormat::make(12, 0), FixedFormat::make(2, 1)}) {
    for (std::int64_t raw = fmt.min_raw(); raw <= fmt.max_raw(); ++raw) {
      const Fixed x(raw, fmt);
      for (Rounding mode : {Rounding::half_away, Rounding::truncate}) {
        const auto q = quantize(x.to_real(), fmt, mode);
        REQUIRE(q.value == x);
        REQUIRE_FALSE(q.saturated);
      }
    }
  }
}

TEST_CASE("add and sub grow by one bit and are exact") {
  const Fixed half(16384, kQ15);
  const Fixed quarter(8192, kQ15);
  const Fixed sum = add(half, quarter);
  CHECK(sum.to_real() == 0.75);
  CHECK(sum.format() == FixedFormat::make(17, 15));

  const Fixed minus_one(-32768, kQ15);
  const Fixed grown = add(minus_one, minus_one);
  CHECK(grown.to_real() == -2.0);
  CHECK(grown.raw() == -65536);

  const Fixed r(23170, kQ15);
  CHECK(add(r, r).raw() == 46340);
  CHECK(add(r, r).format().word_bits == 17);

  CHECK_THROWS_AS(add(half, Fixed(1, FixedFormat::make(16, 14))), std::invalid_argument);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 100000; ++i) {
    const auto a = static_cast<std::int16_t>(rng());
    const auto b = static_cast<std::int16_t>(rng());
    REQUIRE(add(Fixed(a, kQ15), Fixed(b, kQ15)).raw() == a + b);
    REQUIRE(sub(Fixed(a, kQ15), Fixed(b, kQ15)).raw() == a - b);
  }
}

TEST_CASE("scale_half_round") {
  const FixedFormat q17 = FixedFormat::make(17, 15);
  CHECK(scale_half_round(Fixed(2, q17)).raw() == 1);
  CHECK(scale_half_round(Fixed(3, q17), Rounding::half_away).raw() == 2);
  CHECK(scale_half_round(Fixed(-3, q17), Rounding::half_away).raw() == -2);
  CHECK(scale_half_round(Fixed(3, q17), Rounding::truncate).raw() == 1);
  CHECK(scale_half_round(Fixed(-3, q17), Rounding::truncate).raw() == -2);
  CHECK(scale_half_round(Fixed(2, q17)).format() == kQ15);
  // 32767 - (-32768) is the one grown value that rounds past the narrow range.
  CHECK(scale_half_round(Fixed(65535, q17)).raw() == 32767);
}

TEST_CASE("scale_half_round error is at most half an LSB, exhaustive at 17 bits") {
  const FixedFormat q17 = FixedFormat::make(17, 15);
  const double half_lsb = std::ldexp(1.0, -16);
  for (Rounding mode : {Rounding::half_away, Rounding::truncate}) {
    for (std::int64_t raw = q17.min_raw(); raw <= q17.max_raw(); ++raw) {
      const Fixed a(raw, q17);
      const Fixed h = scale_half_round(a, mode);
      REQUIRE(std::abs(h.to_real() - a.to_real() / 2.0) <= half_lsb);
    }
  }
}

TEST_CASE("negate") {
  CHECK(negate(Fixed(0, kQ15)).value.raw() == 0);
  CHECK(negate(Fixed(16384, kQ15)).value.to_real() == -0.5);
  const auto sat = negate(Fixed(-32768, kQ15));
  CHECK(sat.saturated);
  CHECK(sat.value.raw() == 32767);

  int saturations = 0;
  for (std::int64_t raw = kQ15.min_raw(); raw <= kQ15.max_raw(); ++raw) {
    const Fixed x(raw, kQ15);
    const auto n = negate(x);
    if (n.saturated) {
      ++saturations;
      continue;
    }
    REQUIRE(n.value.raw() == -raw);
    REQUIRE(negate(n.value).value == x);
  }
  CHECK(saturations == 1);
}

TEST_CASE("round_shift_right") {
  CHECK(round_shift_right(5, 1, Rounding::half_away) == 3);
  CHECK(round_shift_right(-5, 1, Rounding::half_away) == -3);
  CHECK(round_shift_right(5, 1, Rounding::truncate) == 2);
  CHECK(round_shift_right(-5, 1, Rounding::truncate) == -3);
  CHECK(round_shift_right(-6, 2, Rounding::half_away) == -2);
  CHECK(round_shift_right(-5, 2, Rounding::half_away) == -1);
  CHECK(round_shift_right(7, 0, Rounding::half_away) == 7);
  CHECK(round_shift_right(INT64_MIN, 1, Rounding::half_away) == INT64_MIN / 2);
  CHECK_THROWS(round_shift_right(1, -1, Rounding::truncate));
}

TEST_CASE("rounding names") {
  CHECK(parse_rounding("truncate") == Rounding::truncate);
  CHECK(parse_rounding(to_string(Rounding::half_away)) == Rounding::half_away);
  CHECK_THROWS_AS(parse_rounding("banker"), std::invalid_argument);
  CHECK(signed_bit_width(0) == 1);
  CHECK(signed_bit_width(-1) == 1);
  CHECK(signed_bit_width(511) == 10);
  CHECK(signed_bit_width(512) == 11);
  CHECK(signed_bit_width(-512) == 10);
}
