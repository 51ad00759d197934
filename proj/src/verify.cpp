#include "r22sdf/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "r22sdf/complex_mult.hpp"
#include "r22sdf/radix22.hpp"
#include "r22sdf/signals.hpp"

namespace r22sdf::verify {

namespace {

CheckResult started(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  return r;
}

std::int64_t random_raw(std::mt19937_64& rng, int bits) {
  const std::uint64_t u = rng() >> (64 - bits);
  // Sign-extend the low `bits` bits.
  const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
  return static_cast<std::int64_t>(u ^ sign) - static_cast<std::int64_t>(sign);
}

std::string describe_product(std::int64_t a, std::int64_t b, std::int64_t expected, std::int64_t got) {
  std::ostringstream os;
  os << "a=" << a << " b=" << b << " expected=" << expected << " got=" << got;
  return os.str();
}

bool check_product(CheckResult& r, const SlicedWord& sa, std::int64_t a, std::int64_t b, MultiplyProbe* probe) {
  const std::int64_t got = shift_add_multiply_raw(sa, b, probe);
  const std::int64_t expected = a * b;
  ++r.cases;
  if (got != expected) {
    r.passed = false;
    r.counterexample = describe_product(a, b, expected, got);
    return false;
  }
  return true;
}

bool check_cmul(CheckResult& r, const ComplexFixed& a, const SlicedOperand& sliced, std::int64_t wr,
                std::int64_t wi, int faulty_bit) {
  const Twiddle w{wr, wi, a.format(), 0, -1};
  MultiplyProbe probe;
  probe.faulty_bit = faulty_bit;
  const WideComplex got = cmul3_full(sliced, w, &probe);
  const WideComplex expected = cmul_direct_full(a, w);
  ++r.cases;
  if (got == expected && probe.multiplies == 3) return true;
  std::ostringstream os;
  os << "a=(" << a.re().raw() << "," << a.im().raw() << ") w=(" << wr << "," << wi << ") expected=("
     << expected.re << "," << expected.im << ") got=(" << got.re << "," << got.im
     << ") multiplies=" << probe.multiplies;
  r.passed = false;
  r.counterexample = os.str();
  return false;
}

}  // namespace

CheckResult multiplier_exhaustive(SliceConfig slicing, int faulty_bit) {
  const int bits = slicing.width();
  CheckResult r = started("shift-add multiplier exhaustive " + std::to_string(bits) + "-bit (b=" +
                std::to_string(slicing.blocks) + ", p=" + std::to_string(slicing.bits_per_block) + ")");
  const FixedFormat fmt = FixedFormat::make(bits, bits - 1);
  MultiplyProbe probe;
  probe.faulty_bit = faulty_bit;
  for (std::int64_t a = fmt.min_raw(); a <= fmt.max_raw(); ++a) {
    const SlicedWord sa = slice(Fixed(a, fmt), slicing);
    for (std::int64_t b = fmt.min_raw(); b <= fmt.max_raw(); ++b) {
      if (!check_product(r, sa, a, b, &probe)) return r;
    }
  }
  return r;
}

CheckResult multiplier_random(SliceConfig slicing, std::uint64_t count, std::uint64_t seed, int faulty_bit) {
  const int bits = slicing.width();
  CheckResult r = started("shift-add multiplier random " + std::to_string(bits) + "-bit (b=" +
                std::to_string(slicing.blocks) + ", p=" + std::to_string(slicing.bits_per_block) + ")");
  const FixedFormat fmt = FixedFormat::make(bits, bits - 1);
  std::mt19937_64 rng(seed);
  MultiplyProbe probe;
  probe.faulty_bit = faulty_bit;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::int64_t a = random_raw(rng, bits);
    const std::int64_t b = random_raw(rng, bits);
    if (!check_product(r, slice(Fixed(a, fmt), slicing), a, b, &probe)) return r;
  }
  return r;
}

CheckResult cmul3_exhaustive(int word_bits, int bits_per_block, int faulty_bit) {
  CheckResult r = started("3-multiply complex product exhaustive " + std::to_string(word_bits) + "-bit");
  const FixedFormat fmt = FixedFormat::make(word_bits, word_bits - 1);
  const SliceConfig slicing = SliceConfig::covering(word_bits, bits_per_block);
  const std::int64_t lo = fmt.min_raw();
  const std::int64_t hi = fmt.max_raw();
  for (std::int64_t ar = lo; ar <= hi; ++ar) {
    for (std::int64_t ai = lo; ai <= hi; ++ai) {
      const ComplexFixed a = ComplexFixed::from_raw(ar, ai, fmt);
      // The data side is sliced once per sample, as in the datapath.
      const SlicedOperand sliced = slice_operand(a, slicing);
      for (std::int64_t wr = lo; wr <= hi; ++wr) {
        for (std::int64_t wi = lo; wi <= hi; ++wi) {
          if (!check_cmul(r, a, sliced, wr, wi, faulty_bit)) return r;
        }
      }
    }
  }
  return r;
}

CheckResult cmul3_random(int word_bits, int bits_per_block, std::uint64_t count, std::uint64_t seed,
                         int faulty_bit) {
  CheckResult r = started("3-multiply complex product random " + std::to_string(word_bits) + "-bit");
  const FixedFormat fmt = FixedFormat::make(word_bits, word_bits - 1);
  const SliceConfig slicing = SliceConfig::covering(word_bits, bits_per_block);
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::int64_t ar = random_raw(rng, word_bits);
    const std::int64_t ai = random_raw(rng, word_bits);
    const std::int64_t wr = random_raw(rng, word_bits);
    const std::int64_t wi = random_raw(rng, word_bits);
    const ComplexFixed a = ComplexFixed::from_raw(ar, ai, fmt);
    if (!check_cmul(r, a, slice_operand(a, slicing), wr, wi, faulty_bit)) return r;
  }
  return r;
}

CheckResult fft_vs_dft(int n_points, std::uint64_t frames, std::uint64_t seed, double tolerance) {
  CheckResult r = started("radix-2^2 double model vs DFT, N=" + std::to_string(n_points));
  const auto corpus = uniform_random_frames(n_points, frames, seed);
  for (std::size_t f = 0; f < corpus.size(); ++f) {
    const DoubleFrame ref = dft_reference(corpus[f]);
    const DoubleFrame got = to_natural_order(fft_r22_functional(corpus[f], false));
    double peak = 0.0;
    double worst = 0.0;
    double time_energy = 0.0;
    double freq_energy = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
      peak = std::max(peak, std::abs(ref[k]));
      worst = std::max(worst, std::abs(ref[k] - got[k]));
      time_energy += std::norm(corpus[f][k]);
      freq_energy += std::norm(got[k]);
    }
    const double rel = peak > 0 ? worst / peak : worst;
    const double parseval = std::abs(time_energy - freq_energy / n_points) / std::max(time_energy, 1e-300);
    ++r.cases;
    if (!(rel < tolerance) || !(parseval < tolerance)) {
      std::ostringstream os;
      os << "frame " << f << " (seed " << seed << "): max relative error " << rel << ", Parseval mismatch "
         << parseval << " (tolerance " << tolerance << ")";
      r.passed = false;
      r.counterexample = os.str();
      return r;
    }
  }
  return r;
}

CheckResult pipeline_vs_functional(const PipelineConfig& config, std::uint64_t frames, std::uint64_t seed) {
  const DatapathConfig& dp = config.datapath;
  CheckResult r = started("pipeline vs functional fixed model, N=" + std::to_string(dp.n_points) + " " +
                to_string(dp.format));
  const auto inputs = quantize_frames(uniform_random_frames(dp.n_points, frames, seed), dp.format);
  SdfPipeline pipeline(config);
  const RunResult run = run_frames(pipeline, inputs);
  for (std::size_t f = 0; f < inputs.size(); ++f) {
    const FixedFrame expected = fft_r22_functional(inputs[f], dp);
    ++r.cases;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (!(expected[k] == run.outputs[f][k])) {
        std::ostringstream os;
        os << "frame " << f << " slot " << k << " (seed " << seed << "): expected " << expected[k] << " got "
           << run.outputs[f][k];
        r.passed = false;
        r.counterexample = os.str();
        return r;
      }
    }
  }
  return r;
}

}  // namespace r22sdf::verify
