#include "r22sdf/digit_slicing.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace r22sdf {

SliceConfig SliceConfig::make(int blocks, int bits_per_block) {
  if (blocks < 1 || bits_per_block < 1 || bits_per_block > 32 ||
      blocks * bits_per_block > 64 || blocks > SlicedWord::kMaxBlocks) {
    throw std::invalid_argument("invalid slice config b=" + std::to_string(blocks) +
                                " p=" + std::to_string(bits_per_block));
  }
  return SliceConfig{blocks, bits_per_block};
}

SliceConfig SliceConfig::covering(int word_bits, int bits_per_block) {
  if (bits_per_block < 1) throw std::invalid_argument("bits_per_block must be >= 1");
  return make((word_bits + bits_per_block - 1) / bits_per_block, bits_per_block);
}

SlicedWord::SlicedWord(std::span<const std::uint32_t> blocks, SliceConfig config, FixedFormat format)
    : config_(config), format_(format) {
  if (config.width() != format.word_bits) {
    throw std::invalid_argument("slice width " + std::to_string(config.width()) +
                                " != word_bits " + std::to_string(format.word_bits));
  }
  if (blocks.size() != static_cast<std::size_t>(config.blocks)) {
    throw std::invalid_argument("block count does not match slice config");
  }
  const std::uint32_t limit = config.bits_per_block == 32 ? 0xFFFFFFFFu : (1u << config.bits_per_block) - 1u;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k] > limit) throw std::invalid_argument("block value exceeds p bits");
    blocks_[k] = blocks[k];
  }
}

SlicedWord slice(const Fixed& x, SliceConfig config) {
  if (config.width() != x.format().word_bits) {
    throw std::invalid_argument("slice config width " + std::to_string(config.width()) +
                                " does not match " + to_string(x.format()));
  }
  SlicedWord s;
  s.config_ = config;
  s.format_ = x.format();
  const auto pattern = static_cast<std::uint64_t>(x.raw());
  const int p = config.bits_per_block;
  const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
  for (int k = 0; k < config.blocks; ++k) {
    s.blocks_[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>((pattern >> (p * k)) & mask);
  }
  return s;
}

SlicedWord slice_extended(const Fixed& x, int bits_per_block) {
  const SliceConfig cfg = SliceConfig::covering(x.format().word_bits, bits_per_block);
  return slice(x.extended(FixedFormat::make(cfg.width(), x.format().frac_bits)), cfg);
}

Fixed reconstruct(const SlicedWord& s) {
  const int p = s.config().bits_per_block;
  const int b = s.config().blocks;
  // Unsigned weighted sum of all blocks, then remove twice the sign bit's
  // positive weight so that it counts as -2^(pb-1).
  std::uint64_t sum = 0;
  for (int k = 0; k < b; ++k) sum += static_cast<std::uint64_t>(s.block(k)) << (p * k);
  const int width = p * b;
  std::int64_t raw;
  if (width == 64) {
    raw = static_cast<std::int64_t>(sum);
  } else {
    const std::uint64_t sign = std::uint64_t{1} << (width - 1);
    raw = static_cast<std::int64_t>(sum & (sign - 1)) - ((sum & sign) ? static_cast<std::int64_t>(sign) : 0);
  }
  return Fixed(raw, s.format());
}

std::int64_t shift_add_multiply_raw(const SlicedWord& a, std::int64_t b, MultiplyProbe* probe) {
  const int p = a.config().bits_per_block;
  const int top = a.config().blocks - 1;
  const int fault = probe != nullptr ? probe->faulty_bit : -1;
  // Two's-complement accumulation in uint64 wraps exactly like the adder
  // tree; operands are at most 64 bits wide in total.
  const auto addend = static_cast<std::uint64_t>(b);
  std::uint64_t acc = 0;
  std::uint64_t adds = 0;
  for (int k = 0; k <= top; ++k) {
    for (std::uint32_t bits = a.block(k); bits != 0; bits &= bits - 1) {
      const int j = std::countr_zero(bits);
      int shift = p * k + j;
      if (shift == fault) ++shift;
      const std::uint64_t partial = shift < 64 ? addend << shift : 0;
      // The sign bit X_{b-1,p-1} carries weight -2^(pb-1).
      if (k == top && j == p - 1) {
        acc -= partial;
      } else {
        acc += partial;
      }
      ++adds;
    }
  }
  if (probe != nullptr) {
    ++probe->multiplies;
    probe->partial_products += adds;
  }
  return static_cast<std::int64_t>(acc);
}

Fixed shift_add_multiply(const SlicedWord& a, const Fixed& b, MultiplyProbe* probe) {
  const int word = a.format().word_bits + b.format().word_bits;
  if (word > 64) throw std::invalid_argument("product wider than 64 bits");
  const FixedFormat out = FixedFormat::make(word, a.format().frac_bits + b.format().frac_bits);
  return Fixed(shift_add_multiply_raw(a, b.raw(), probe), out);
}

}  // namespace r22sdf
