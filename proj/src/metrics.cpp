#include "r22sdf/metrics.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace r22sdf {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ErrorReport compare(const std::vector<DoubleFrame>& reference, const std::vector<DoubleFrame>& measured,
                    double scale, std::string corpus_id, std::string config) {
  if (reference.size() != measured.size()) throw std::invalid_argument("corpus frame counts differ");
  const std::size_t bins = reference.empty() ? 0 : reference.front().size();
  for (std::size_t f = 0; f < reference.size(); ++f) {
    if (reference[f].size() != bins || measured[f].size() != bins) {
      throw std::invalid_argument("frame lengths differ at frame " + std::to_string(f));
    }
    if (reference[f].ordering != measured[f].ordering) {
      throw std::invalid_argument("frame ordering tags differ at frame " + std::to_string(f));
    }
  }

  ErrorReport r;
  r.frames = reference.size();
  r.corpus_id = std::move(corpus_id);
  r.config = std::move(config);
  r.per_bin.assign(bins, {0.0, 0.0});
  for (std::size_t f = 0; f < reference.size(); ++f) {
    for (std::size_t k = 0; k < bins; ++k) {
      const std::complex<double> ref = reference[f][k];
      const std::complex<double> err = measured[f][k] * scale - ref;
      r.signal_energy += std::norm(ref);
      r.error_energy += std::norm(err);
      r.max_abs_err = std::max(r.max_abs_err, std::abs(err));
      r.per_bin[k] += err;
    }
  }
  if (r.frames > 0) {
    for (auto& e : r.per_bin) e /= static_cast<double>(r.frames);
  }
  const double count = static_cast<double>(r.frames * bins);
  r.rms_err = count > 0 ? std::sqrt(r.error_energy / count) : 0.0;
  r.error_free = r.error_energy == 0.0;
  r.sqnr_db = r.error_free ? std::numeric_limits<double>::infinity()
                           : 10.0 * std::log10(r.signal_energy / r.error_energy);
  return r;
}

ErrorReport compare(const std::vector<DoubleFrame>& reference, const std::vector<FixedFrame>& fixed, double scale,
                    std::string corpus_id, std::string config) {
  std::vector<DoubleFrame> measured;
  measured.reserve(fixed.size());
  for (const auto& f : fixed) measured.push_back(to_double_frame(f));
  return compare(reference, measured, scale, std::move(corpus_id), std::move(config));
}

void write_text(std::ostream& os, const ErrorReport& r) {
  os << "corpus:        " << r.corpus_id << "\n"
     << "config:        " << r.config << "\n"
     << "frames:        " << r.frames << "\n"
     << "SQNR (dB):     " << format_number(r.sqnr_db) << (r.error_free ? " (error-free)" : "") << "\n"
     << "max |err|:     " << format_number(r.max_abs_err) << "\n"
     << "RMS err:       " << format_number(r.rms_err) << "\n"
     << "per-bin mean error:\n";
  for (std::size_t k = 0; k < r.per_bin.size(); ++k) {
    os << "  bin " << k << ": " << format_number(r.per_bin[k].real()) << " " << format_number(r.per_bin[k].imag())
       << "j\n";
  }
}

void write_csv(std::ostream& os, const ErrorReport& r) {
  os << "metric,value\n"
     << "corpus," << r.corpus_id << "\n"
     << "frames," << r.frames << "\n"
     << "sqnr_db," << format_number(r.sqnr_db) << "\n"
     << "error_free," << (r.error_free ? 1 : 0) << "\n"
     << "signal_energy," << format_number(r.signal_energy) << "\n"
     << "error_energy," << format_number(r.error_energy) << "\n"
     << "max_abs_err," << format_number(r.max_abs_err) << "\n"
     << "rms_err," << format_number(r.rms_err) << "\n";
  for (std::size_t k = 0; k < r.per_bin.size(); ++k) {
    os << "bin" << k << "_err_re," << format_number(r.per_bin[k].real()) << "\n"
       << "bin" << k << "_err_im," << format_number(r.per_bin[k].imag()) << "\n";
  }
}

}  // namespace r22sdf
