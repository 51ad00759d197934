#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "r22sdf/frame.hpp"

namespace r22sdf {

struct ErrorReport {
  double sqnr_db = 0.0;         // +inf when the error energy is zero
  bool error_free = false;
  double signal_energy = 0.0;
  double error_energy = 0.0;
  double max_abs_err = 0.0;
  double rms_err = 0.0;
  std::vector<std::complex<double>> per_bin;  // mean of (measured - reference) per bin over the corpus
  std::size_t frames = 0;
  std::string corpus_id;
  std::string config;
};

// Compares fixed-point frames (converted to real and multiplied by `scale`)
// against reference frames. Both corpora must have the same shape and the
// same ordering tag on every frame; throws std::invalid_argument otherwise.
// Sums run in frame then bin order.
ErrorReport compare(const std::vector<DoubleFrame>& reference, const std::vector<FixedFrame>& fixed,
                    double scale, std::string corpus_id = {}, std::string config = {});

// Same comparison with the fixed side already converted to doubles.
ErrorReport compare(const std::vector<DoubleFrame>& reference, const std::vector<DoubleFrame>& measured,
                    double scale, std::string corpus_id = {}, std::string config = {});

void write_text(std::ostream& os, const ErrorReport& report);
// `metric,value` rows.
void write_csv(std::ostream& os, const ErrorReport& report);

// Locale-independent shortest round-trip decimal.
std::string format_number(double v);

}  // namespace r22sdf
