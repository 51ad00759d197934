#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "r22sdf/fixed_point.hpp"

namespace r22sdf {

enum class Domain { time, frequency };
enum class Ordering { natural, bit_reversed };

template <typename Sample>
struct Frame {
  std::vector<Sample> samples;
  Domain domain = Domain::time;
  Ordering ordering = Ordering::natural;

  std::size_t size() const { return samples.size(); }
  const Sample& operator[](std::size_t i) const { return samples[i]; }
  Sample& operator[](std::size_t i) { return samples[i]; }

  friend bool operator==(const Frame&, const Frame&) = default;
};

using DoubleFrame = Frame<std::complex<double>>;
using FixedFrame = Frame<ComplexFixed>;

inline bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

inline std::size_t bit_reverse(std::size_t index, int bits) {
  std::size_t r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | ((index >> b) & 1U);
  }
  return r;
}

// Involution: applying it twice restores the frame, including its tag.
template <typename Sample>
Frame<Sample> bit_reverse_permute(const Frame<Sample>& f) {
  if (!is_power_of_two(f.size())) throw std::invalid_argument("frame length must be a power of two");
  const int bits = std::countr_zero(f.size());
  Frame<Sample> out;
  out.domain = f.domain;
  out.ordering = f.ordering == Ordering::natural ? Ordering::bit_reversed : Ordering::natural;
  out.samples.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.samples[bit_reverse(i, bits)] = f.samples[i];
  return out;
}

template <typename Sample>
Frame<Sample> to_natural_order(const Frame<Sample>& f) {
  return f.ordering == Ordering::natural ? f : bit_reverse_permute(f);
}

inline std::complex<double> to_complex(const ComplexFixed& z) {
  return {z.re().to_real(), z.im().to_real()};
}

inline DoubleFrame to_double_frame(const FixedFrame& f) {
  DoubleFrame out;
  out.domain = f.domain;
  out.ordering = f.ordering;
  out.samples.reserve(f.size());
  for (const auto& z : f.samples) out.samples.push_back(to_complex(z));
  return out;
}

}  // namespace r22sdf
