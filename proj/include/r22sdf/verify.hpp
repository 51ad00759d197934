#pragma once

#include <cstdint>
#include <string>

#include "r22sdf/digit_slicing.hpp"
#include "r22sdf/sdf_pipeline.hpp"

namespace r22sdf::verify {

// Outcome of one equivalence sweep. On failure `counterexample` names the
// operands, the expected value and what the model produced.
struct CheckResult {
  std::string name;
  std::uint64_t cases = 0;
  bool passed = true;
  std::string counterexample;
};

// Shift-add product vs direct signed multiplication, every pair of
// word_bits-wide raw operands. `faulty_bit` >= 0 corrupts one shift weight.
CheckResult multiplier_exhaustive(SliceConfig slicing, int faulty_bit = -1);

// Same against random operands of slicing.width() bits.
CheckResult multiplier_random(SliceConfig slicing, std::uint64_t count, std::uint64_t seed, int faulty_bit = -1);

// Three-product complex multiply vs the four-product form at full precision,
// plus the 3-multiplies-per-call count. Operands are `word_bits` wide raws;
// the twiddle is taken as a `word_bits` constant with no storage shift.
CheckResult cmul3_exhaustive(int word_bits, int bits_per_block, int faulty_bit = -1);
CheckResult cmul3_random(int word_bits, int bits_per_block, std::uint64_t count, std::uint64_t seed,
                         int faulty_bit = -1);

// Double-precision radix-2^2 model vs the O(N^2) DFT: max relative error
// below `tolerance` and Parseval to the same tolerance.
CheckResult fft_vs_dft(int n_points, std::uint64_t frames, std::uint64_t seed, double tolerance = 1e-9);

// Pipeline outputs vs the functional fixed-point model, raw for raw.
CheckResult pipeline_vs_functional(const PipelineConfig& config, std::uint64_t frames, std::uint64_t seed);

}  // namespace r22sdf::verify
