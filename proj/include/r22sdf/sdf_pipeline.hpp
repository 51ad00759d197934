#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "r22sdf/complex_mult.hpp"
#include "r22sdf/frame.hpp"
#include "r22sdf/radix22.hpp"

namespace r22sdf {

enum class StageKind { bf2i, bf2ii, twiddle_mult };

std::string to_string(StageKind kind);

struct StageSpec {
  StageKind kind = StageKind::bf2i;
  int feedback = 0;       // shift register length L (butterflies only)
  int level = 0;          // sub-transform length M this stage belongs to
  int twiddle_stage = -1; // ROM index (multipliers only)
  int delay = 0;          // clocks from stage input to stage output
  FixedFormat in_format{};
  FixedFormat out_format{};

  std::string name(std::size_t index) const;
};

struct PipelineConfig {
  DatapathConfig datapath{};
  int multiplier_depth = 1;  // register stages inside each twiddle multiplier

  void validate() const;
};

// Alternating BF2I/BF2II pairs, a twiddle multiplier after each pair except
// the last, and a lone BF2I when log2(N) is odd.
std::vector<StageSpec> stage_layout(const PipelineConfig& config);

enum class Signal { in, fb_head, ci, c2, occupancy, exponent, out, valid };

std::string to_string(Signal s);

struct TraceRow {
  std::uint64_t cycle = 0;
  int stage = -1;  // -1 for the pipeline ports
  Signal signal = Signal::in;
  std::int64_t re = 0;
  std::int64_t im = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

// Per-cycle signal capture. Rows are appended in a fixed order (ports, then
// stages in datapath order), so identical runs produce identical CSV bytes.
class TraceRecorder {
 public:
  void set_stage_names(std::vector<std::string> names) { stage_names_ = std::move(names); }
  void record(std::uint64_t cycle, int stage, Signal signal, std::int64_t re, std::int64_t im = 0) {
    rows_.push_back({cycle, stage, signal, re, im});
  }

  const std::vector<TraceRow>& rows() const { return rows_; }
  void write_csv(std::ostream& os) const;
  std::string to_csv() const;

 private:
  std::vector<std::string> stage_names_;
  std::vector<TraceRow> rows_;
};

// Cycle-accurate radix-2^2 single-path delay feedback pipeline. One complex
// sample enters per tick; once primed, one leaves per tick. Not thread-safe;
// separate instances are independent.
class SdfPipeline {
 public:
  explicit SdfPipeline(PipelineConfig config);

  // Advances one clock. Returns the output sample once cycle >= latency().
  std::optional<ComplexFixed> tick(const ComplexFixed& input);

  // Feeds latency() zero samples and returns what comes out.
  std::vector<ComplexFixed> drain();

  int latency() const { return latency_; }
  std::uint64_t cycle() const { return cycle_; }
  const PipelineConfig& config() const { return config_; }
  const std::vector<StageSpec>& layout() const { return layout_; }
  const TwiddleRom& rom(int twiddle_stage) const { return roms_.at(static_cast<std::size_t>(twiddle_stage)); }
  FixedFormat output_format() const { return layout_.back().out_format; }

  // Shift-add multiplier activity per stage (always zero for butterflies).
  const MultiplyProbe& stage_probe(std::size_t stage) const { return states_.at(stage).probe; }

  void attach_trace(TraceRecorder* trace);

 private:
  struct StageState {
    std::vector<ComplexFixed> feedback;
    std::size_t head = 0;
    int position = 0;  // frame position of the sample entering this clock
    int occupancy = 0;
    std::vector<ComplexFixed> delay_line;  // multiplier registers, oldest first
    MultiplyProbe probe;
  };

  ComplexFixed step_butterfly(std::size_t index, const ComplexFixed& input);
  ComplexFixed step_multiplier(std::size_t index, const ComplexFixed& input);

  PipelineConfig config_;
  std::vector<StageSpec> layout_;
  std::vector<StageState> states_;
  std::vector<TwiddleRom> roms_;
  int latency_ = 0;
  std::uint64_t cycle_ = 0;
  TraceRecorder* trace_ = nullptr;
};

inline SdfPipeline build_pipeline(const PipelineConfig& config) { return SdfPipeline(config); }

struct RunResult {
  std::vector<FixedFrame> outputs;  // bit-reversed order, one per input frame
  int latency = 0;
  std::uint64_t cycles = 0;         // clocks consumed, including the flush
};

// Streams frames back-to-back (no idle clocks between them), then flushes
// with zeros. The pipeline must sit on a frame boundary (cycle % N == 0).
RunResult run_frames(SdfPipeline& pipeline, const std::vector<FixedFrame>& frames);

}  // namespace r22sdf
