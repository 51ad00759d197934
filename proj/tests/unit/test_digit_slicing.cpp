#include "doctest.h"

#include <bit>
#include <random>
#include <stdexcept>
#include <vector>

#include "r22sdf/digit_slicing.hpp"

using namespace r22sdf;

namespace {

std::vector<std::uint32_t> blocks_of(const SlicedWord& s) { return {s.blocks().begin(), s.blocks().end()}; }

}  // namespace

TEST_CASE("slice configuration") {
  CHECK_THROWS_AS(SliceConfig::make(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SliceConfig::make(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(SliceConfig::make(17, 4), std::invalid_argument);
  CHECK(SliceConfig::covering(17, 4) == SliceConfig{5, 4});
  CHECK(SliceConfig::covering(16, 4) == SliceConfig{4, 4});
  CHECK_THROWS_AS(slice(Fixed(0, kQ15), SliceConfig{3, 4}), std::invalid_argument);
}

TEST_CASE("slice partitions the bit pattern LSB block first") {
  const SliceConfig cfg{4, 4};
  CHECK(blocks_of(slice(Fixed(0, kQ15), cfg)) == std::vector<std::uint32_t>{0, 0, 0, 0});

  const SlicedWord minus_one = slice(Fixed(-32768, kQ15), cfg);
  CHECK(blocks_of(minus_one) == std::vector<std::uint32_t>{0x0, 0x0, 0x0, 0x8});
  CHECK(reconstruct(minus_one).to_real() == -1.0);

  CHECK(blocks_of(slice(Fixed(0x5A82, kQ15), cfg)) == std::vector<std::uint32_t>{0x2, 0x8, 0xA, 0x5});
}

TEST_CASE("reconstruct inverts the partition") {
  const std::vector<std::uint32_t> blocks{0x2, 0x8, 0xA, 0x5};
  const SlicedWord s(blocks, SliceConfig{4, 4}, kQ15);
  CHECK(reconstruct(s).raw() == 0x5A82);
  CHECK(reconstruct(slice(Fixed(0, kQ15), SliceConfig{4, 4})).raw() == 0);

  const std::vector<std::uint32_t> too_wide{0x10, 0, 0, 0};
  CHECK_THROWS_AS(SlicedWord(too_wide, SliceConfig{4, 4}, kQ15), std::invalid_argument);
}

TEST_CASE("slice and reconstruct form a bijection on 16-bit patterns") {
  for (const SliceConfig cfg : {SliceConfig{4, 4}, SliceConfig{2, 8}, SliceConfig{8, 2}, SliceConfig{16, 1}}) {
    for (std::int64_t raw = kQ15.min_raw(); raw <= kQ15.max_raw(); ++raw) {
      const Fixed x(raw, kQ15);
      REQUIRE(reconstruct(slice(x, cfg)) == x);
    }
  }
  // Surjectivity: every block tuple is the slice of its reconstruction.
  const SliceConfig cfg{4, 4};
  for (std::uint32_t pattern = 0; pattern < 65536; ++pattern) {
    const std::vector<std::uint32_t> blocks{pattern & 0xF, (pattern >> 4) & 0xF, (pattern >> 8) & 0xF, pattern >> 12};
    const SlicedWord s(blocks, cfg, kQ15);
    REQUIRE(blocks_of(slice(reconstruct(s), cfg)) == blocks);
  }
}

TEST_CASE("shift-add multiply examples") {
  const SliceConfig cfg{4, 4};
  CHECK(shift_add_multiply(slice(Fixed(0, kQ15), cfg), Fixed(12345, kQ15)).raw() == 0);
  CHECK(shift_add_multiply(slice(Fixed(0, kQ15), cfg), Fixed(-32768, kQ15)).raw() == 0);

  const Fixed product = shift_add_multiply(slice(Fixed(16384, kQ15), cfg), Fixed(23170, kQ15));
  CHECK(product.raw() == 379'617'280);
  CHECK(product.format() == FixedFormat::make(32, 30));
}

TEST_CASE("shift-add multiply matches direct multiplication for all 8-bit pairs") {
  const FixedFormat q7 = FixedFormat::make(8, 7);
  for (const SliceConfig cfg : {SliceConfig{2, 4}, SliceConfig{4, 2}, SliceConfig{8, 1}, SliceConfig{1, 8}}) {
    for (std::int64_t a = -128; a < 128; ++a) {
      const SlicedWord sa = slice(Fixed(a, q7), cfg);
      for (std::int64_t b = -128; b < 128; ++b) {
        REQUIRE(shift_add_multiply(sa, Fixed(b, q7)).raw() == a * b);
      }
    }
  }
}

TEST_CASE("shift-add multiply on random 16-bit operands") {
  std::mt19937_64 rng(5);
  MultiplyProbe probe;
  for (int i = 0; i < 200000; ++i) {
    const std::int64_t a = static_cast<std::int16_t>(rng());
    const std::int64_t b = static_cast<std::int16_t>(rng());
    const std::uint64_t before = probe.partial_products;
    REQUIRE(shift_add_multiply(slice(Fixed(a, kQ15), SliceConfig{4, 4}), Fixed(b, kQ15), &probe).raw() == a * b);
    // One conditional add per set bit of the sliced pattern.
    REQUIRE(probe.partial_products - before ==
            static_cast<std::uint64_t>(std::popcount(static_cast<std::uint16_t>(a))));
  }
  CHECK(probe.multiplies == 200000);
}

TEST_CASE("multiplying by -1.0 subtracts the shifted operand once") {
  const SlicedWord minus_one = slice(Fixed(-32768, kQ15), SliceConfig{4, 4});
  for (std::int64_t b = kQ15.min_raw(); b <= kQ15.max_raw(); ++b) {
    MultiplyProbe probe;
    REQUIRE(shift_add_multiply_raw(minus_one, b, &probe) == -(b << 15));
    REQUIRE(probe.partial_products == 1);
  }
}

TEST_CASE("sliced operands wider than the slice grid are sign-extended") {
  const FixedFormat q17 = FixedFormat::make(17, 15);
  const SlicedWord s = slice_extended(Fixed(-65536, q17), 4);
  CHECK(s.config() == SliceConfig{5, 4});
  CHECK(reconstruct(s).raw() == -65536);
  CHECK(shift_add_multiply_raw(s, 3) == -196608);
}

TEST_CASE("fault hook perturbs one shift weight") {
  MultiplyProbe probe;
  probe.faulty_bit = 2;
  const SlicedWord four = slice(Fixed(4, kQ15), SliceConfig{4, 4});
  CHECK(shift_add_multiply_raw(four, 3, &probe) == 24);
  CHECK(shift_add_multiply_raw(four, 3) == 12);
}
