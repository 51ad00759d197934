#include "r22sdf/signals.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "r22sdf/metrics.hpp"

namespace r22sdf {

DoubleFrame impulse_frame(int n_points, double amplitude) {
  DoubleFrame f;
  f.samples.assign(static_cast<std::size_t>(n_points), {0.0, 0.0});
  f.samples.at(0) = {amplitude, 0.0};
  return f;
}

DoubleFrame cosine_frame(int n_points, int bin, double amplitude) {
  DoubleFrame f;
  f.samples.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const long long phase = (static_cast<long long>(bin) * i) % n_points;
    f.samples.emplace_back(
        amplitude * std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) / n_points), 0.0);
  }
  return f;
}

std::vector<DoubleFrame> uniform_random_frames(int n_points, std::size_t frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng] {
    const auto raw = static_cast<std::int16_t>(static_cast<std::uint16_t>(rng() >> 48));
    return std::ldexp(static_cast<double>(raw), -15);
  };
  std::vector<DoubleFrame> out(frames);
  for (auto& f : out) {
    f.samples.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
      const double re = draw();
      const double im = draw();
      f.samples.emplace_back(re, im);
    }
  }
  return out;
}

FixedFrame quantize_frame(const DoubleFrame& f, FixedFormat format, Rounding rounding) {
  FixedFrame out;
  out.domain = f.domain;
  out.ordering = f.ordering;
  out.samples.reserve(f.size());
  for (const auto& z : f.samples) {
    out.samples.emplace_back(quantize(z.real(), format, rounding).value, quantize(z.imag(), format, rounding).value);
  }
  return out;
}

std::vector<FixedFrame> quantize_frames(const std::vector<DoubleFrame>& frames, FixedFormat format,
                                        Rounding rounding) {
  std::vector<FixedFrame> out;
  out.reserve(frames.size());
  for (const auto& f : frames) out.push_back(quantize_frame(f, format, rounding));
  return out;
}

void write_frames_csv(std::ostream& os, const std::vector<FixedFrame>& frames) {
  os << "index,re,im\n";
  std::size_t index = 0;
  for (const auto& f : frames) {
    for (const auto& z : f.samples) os << index++ << ',' << z.re().raw() << ',' << z.im().raw() << '\n';
  }
}

void write_frames_csv(std::ostream& os, const std::vector<DoubleFrame>& frames) {
  os << "index,re,im\n";
  std::size_t index = 0;
  for (const auto& f : frames) {
    for (const auto& z : f.samples) {
      os << index++ << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::vector<DoubleFrame> read_frames_csv(std::istream& is, int n_points) {
  std::vector<std::complex<double>> samples;
  std::string text;
  std::size_t line = 0;
  while (std::getline(is, text)) {
    ++line;
    const std::string_view row = trim(text);
    if (row.empty() || row.front() == '#') continue;
    if (row.starts_with("index")) continue;
    const auto c1 = row.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : row.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw std::runtime_error("line " + std::to_string(line) + ": expected 'index,re,im'");
    }
    (void)parse_double(row.substr(0, c1), line);
    samples.emplace_back(parse_double(row.substr(c1 + 1, c2 - c1 - 1), line), parse_double(row.substr(c2 + 1), line));
  }
  const auto n = static_cast<std::size_t>(n_points);
  if (samples.empty() || samples.size() % n != 0) {
    throw std::runtime_error("sample count " + std::to_string(samples.size()) + " is not a positive multiple of N=" +
                             std::to_string(n_points));
  }
  std::vector<DoubleFrame> frames(samples.size() / n);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    frames[f].samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(f * n),
                             samples.begin() + static_cast<std::ptrdiff_t>((f + 1) * n));
  }
  return frames;
}

}  // namespace r22sdf
