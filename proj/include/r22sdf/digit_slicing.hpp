#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "r22sdf/fixed_point.hpp"

namespace r22sdf {

// b blocks of p bits each; b * p must equal the sliced operand's word length.
struct SliceConfig {
  int blocks = 4;
  int bits_per_block = 4;

  static SliceConfig make(int blocks, int bits_per_block);
  int width() const { return blocks * bits_per_block; }

  // Smallest config with this block size whose width covers `word_bits`.
  static SliceConfig covering(int word_bits, int bits_per_block);

  friend bool operator==(const SliceConfig&, const SliceConfig&) = default;
};

// Instrumentation for the shift-add multiplier. Attach one to count work;
// pass nullptr for none.
struct MultiplyProbe {
  std::uint64_t multiplies = 0;
  std::uint64_t partial_products = 0;  // conditional adds/subtracts of a shifted operand

  // Fault-injection hook for verification tooling: when >= 0, the partial
  // product for this bit position is shifted one place too far.
  int faulty_bit = -1;
};

// Two's-complement word split into unsigned p-bit blocks, least significant
// block first. Only the top bit of the top block carries negative weight.
class SlicedWord {
 public:
  static constexpr int kMaxBlocks = 64;

  SlicedWord(std::span<const std::uint32_t> blocks, SliceConfig config, FixedFormat format);

  std::span<const std::uint32_t> blocks() const { return {blocks_.data(), static_cast<std::size_t>(config_.blocks)}; }
  std::uint32_t block(int k) const { return blocks_[static_cast<std::size_t>(k)]; }
  const SliceConfig& config() const { return config_; }
  const FixedFormat& format() const { return format_; }

  // Bit X_{k,j} of the slice (0 or 1; the top one is read with weight -1).
  int bit(int k, int j) const { return static_cast<int>((blocks_[static_cast<std::size_t>(k)] >> j) & 1U); }

 private:
  friend SlicedWord slice(const Fixed& x, SliceConfig config);
  SlicedWord() = default;

  std::array<std::uint32_t, kMaxBlocks> blocks_{};
  SliceConfig config_{};
  FixedFormat format_{};
};

// Throws std::invalid_argument when config.width() != x.format().word_bits.
SlicedWord slice(const Fixed& x, SliceConfig config);

// Sign-extends x to the next multiple of p bits, then slices.
SlicedWord slice_extended(const Fixed& x, int bits_per_block);

Fixed reconstruct(const SlicedWord& s);

// Exact product a * b built only from shifted copies of b: one add per set
// bit of a, with the sign bit subtracting. Result format has
// a.word_bits + b.word_bits bits and a.frac_bits + b.frac_bits fraction bits.
Fixed shift_add_multiply(const SlicedWord& a, const Fixed& b, MultiplyProbe* probe = nullptr);

// Same datapath on raw integers; no format bookkeeping.
std::int64_t shift_add_multiply_raw(const SlicedWord& a, std::int64_t b, MultiplyProbe* probe = nullptr);

}  // namespace r22sdf
