#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "r22sdf/fixed_point.hpp"
#include "r22sdf/frame.hpp"

namespace r22sdf {

// Test stimuli. All generators are deterministic and platform-independent.

DoubleFrame impulse_frame(int n_points, double amplitude = 0.5);
DoubleFrame cosine_frame(int n_points, int bin = 1, double amplitude = 0.5);

// Uniform samples on the Q1.15 grid in [-1, 1), drawn from the top bits of
// std::mt19937_64 seeded with `seed`.
std::vector<DoubleFrame> uniform_random_frames(int n_points, std::size_t frames, std::uint64_t seed);

// Rounds every component into `format` (saturating).
FixedFrame quantize_frame(const DoubleFrame& f, FixedFormat format, Rounding rounding = Rounding::half_away);
std::vector<FixedFrame> quantize_frames(const std::vector<DoubleFrame>& frames, FixedFormat format,
                                        Rounding rounding = Rounding::half_away);

// CSV frame files: header `index,re,im`, one row per sample, index running
// across frames (frame f, sample i -> f*N + i). Fixed frames are written as
// raw integers, double frames as shortest round-trip decimals.
void write_frames_csv(std::ostream& os, const std::vector<FixedFrame>& frames);
void write_frames_csv(std::ostream& os, const std::vector<DoubleFrame>& frames);

// Reads decimal samples and splits them into frames of `n_points`. Throws
// std::runtime_error on malformed rows or a sample count that is not a
// multiple of N.
std::vector<DoubleFrame> read_frames_csv(std::istream& is, int n_points);

}  // namespace r22sdf
