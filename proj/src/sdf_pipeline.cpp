#include "r22sdf/sdf_pipeline.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace r22sdf {

std::string to_string(StageKind kind) {
  switch (kind) {
    case StageKind::bf2i:
      return "bf2i";
    case StageKind::bf2ii:
      return "bf2ii";
    case StageKind::twiddle_mult:
      return "twiddle";
  }
  return "?";
}

std::string StageSpec::name(std::size_t index) const {
  return to_string(kind) + "_" + std::to_string(index);
}

std::string to_string(Signal s) {
  switch (s) {
    case Signal::in:
      return "in";
    case Signal::fb_head:
      return "fb_head";
    case Signal::ci:
      return "ci";
    case Signal::c2:
      return "c2";
    case Signal::occupancy:
      return "occupancy";
    case Signal::exponent:
      return "exponent";
    case Signal::out:
      return "out";
    case Signal::valid:
      return "valid";
  }
  return "?";
}

void PipelineConfig::validate() const {
  datapath.validate();
  if (multiplier_depth < 0 || multiplier_depth > 64) {
    throw std::invalid_argument("multiplier depth must be in [0, 64]");
  }
}

std::vector<StageSpec> stage_layout(const PipelineConfig& config) {
  config.validate();
  const DatapathConfig& dp = config.datapath;
  const int n = dp.n_points;
  std::vector<StageSpec> layout;
  FixedFormat fmt = dp.format;
  int twiddle_stage = 0;

  auto add_butterfly = [&](StageKind kind, int feedback, int level, bool scale) {
    StageSpec s;
    s.kind = kind;
    s.feedback = feedback;
    s.level = level;
    s.delay = feedback;
    s.in_format = fmt;
    s.out_format = scale ? fmt : fmt.widened();
    fmt = s.out_format;
    layout.push_back(s);
  };

  int m = n;
  for (; m >= 4; m /= 4) {
    add_butterfly(StageKind::bf2i, m / 2, m, dp.scale_bf1);
    add_butterfly(StageKind::bf2ii, m / 4, m, dp.scale_bf2);
    if (m >= 8) {
      StageSpec s;
      s.kind = StageKind::twiddle_mult;
      s.level = m;
      s.twiddle_stage = twiddle_stage++;
      s.delay = config.multiplier_depth;
      s.in_format = fmt;
      s.out_format = fmt.widened();
      fmt = s.out_format;
      layout.push_back(s);
    }
  }
  if (m == 2) add_butterfly(StageKind::bf2i, 1, 2, dp.scale_bf1);
  return layout;
}

void TraceRecorder::write_csv(std::ostream& os) const {
  os << "cycle,stage,signal,re_raw,im_raw\n";
  for (const auto& r : rows_) {
    os << r.cycle << ',';
    if (r.stage < 0) {
      os << "top";
    } else if (static_cast<std::size_t>(r.stage) < stage_names_.size()) {
      os << stage_names_[static_cast<std::size_t>(r.stage)];
    } else {
      os << r.stage;
    }
    os << ',' << to_string(r.signal) << ',' << r.re << ',' << r.im << '\n';
  }
}

std::string TraceRecorder::to_csv() const {
  std::ostringstream os;
  write_csv(os);
  return os.str();
}

SdfPipeline::SdfPipeline(PipelineConfig config) : config_(config), layout_(stage_layout(config)) {
  const int n = config_.datapath.n_points;
  const int twiddles = twiddle_stage_count(n);
  for (int s = 0; s < twiddles; ++s) {
    roms_.push_back(gen_twiddle_rom(n, s, config_.datapath.format, config_.datapath.twiddle_shift));
  }

  // Each stage's control counter is free-running modulo N, phased so that
  // position 0 of a frame reaches the stage exactly `offset` clocks after it
  // entered the pipeline.
  int offset = 0;
  for (const auto& spec : layout_) {
    StageState st;
    st.position = ((-offset) % n + n) % n;
    if (spec.kind == StageKind::twiddle_mult) {
      st.delay_line.assign(static_cast<std::size_t>(spec.delay), ComplexFixed::zero(spec.out_format));
    } else {
      st.feedback.assign(static_cast<std::size_t>(spec.feedback), ComplexFixed::zero(spec.in_format));
    }
    states_.push_back(std::move(st));
    offset += spec.delay;
  }
  latency_ = offset;
}

void SdfPipeline::attach_trace(TraceRecorder* trace) {
  trace_ = trace;
  if (trace_ != nullptr) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < layout_.size(); ++i) names.push_back(layout_[i].name(i));
    trace_->set_stage_names(std::move(names));
  }
}

ComplexFixed SdfPipeline::step_butterfly(std::size_t index, const ComplexFixed& input) {
  const StageSpec& spec = layout_[index];
  StageState& st = states_[index];
  const int l = spec.feedback;
  const bool ci = (st.position % (2 * l)) >= l;
  // C2 marks the k1 = 1 half of the stage's 4L-sample block.
  const bool c2 = spec.kind == StageKind::bf2ii && (st.position % (4 * l)) >= 2 * l;
  const bool scale = spec.kind == StageKind::bf2i ? config_.datapath.scale_bf1 : config_.datapath.scale_bf2;
  const Rounding rnd = config_.datapath.rounding;

  ComplexFixed& slot = st.feedback[st.head];
  const ComplexFixed head = slot;
  ComplexFixed out;

  if (!ci) {
    // Fill: park the input, pass the stored difference downstream.
    out = head.format() == spec.out_format ? head : head.extended(spec.out_format);
    slot = input;
  } else {
    // Swap-MUX: for -j the parts of the incoming sample trade places and the
    // imaginary adder/subtractor pair exchanges roles.
    const bool minus_j = ci && c2;
    const Fixed& b_re = minus_j ? input.im() : input.re();
    const Fixed& b_im = minus_j ? input.re() : input.im();
    auto finish = [&](const Fixed& grown) { return scale ? scale_half_round(grown, rnd) : grown; };
    const Fixed sum_re = finish(add(head.re(), b_re));
    const Fixed diff_re = finish(sub(head.re(), b_re));
    const Fixed sum_im = finish(minus_j ? sub(head.im(), b_im) : add(head.im(), b_im));
    const Fixed diff_im = finish(minus_j ? add(head.im(), b_im) : sub(head.im(), b_im));
    out = ComplexFixed(sum_re, sum_im);
    slot = ComplexFixed(diff_re, diff_im);
  }
  if (st.occupancy < l) ++st.occupancy;

  if (trace_ != nullptr) {
    const auto i = static_cast<int>(index);
    trace_->record(cycle_, i, Signal::in, input.re().raw(), input.im().raw());
    trace_->record(cycle_, i, Signal::fb_head, head.re().raw(), head.im().raw());
    trace_->record(cycle_, i, Signal::ci, ci ? 1 : 0);
    if (spec.kind == StageKind::bf2ii) trace_->record(cycle_, i, Signal::c2, c2 ? 1 : 0);
    trace_->record(cycle_, i, Signal::occupancy, st.occupancy);
    trace_->record(cycle_, i, Signal::out, out.re().raw(), out.im().raw());
  }

  st.head = (st.head + 1) % static_cast<std::size_t>(l);
  return out;
}

ComplexFixed SdfPipeline::step_multiplier(std::size_t index, const ComplexFixed& input) {
  const StageSpec& spec = layout_[index];
  StageState& st = states_[index];
  const TwiddleRom& rom = roms_[static_cast<std::size_t>(spec.twiddle_stage)];
  const Twiddle w = rom.twiddle_at(st.position);
  const ComplexFixed product =
      cmul3(input, w, config_.datapath.slicing, config_.datapath.cmul_options(), &st.probe);

  ComplexFixed out = product;
  if (!st.delay_line.empty()) {
    out = st.delay_line.front();
    st.delay_line.erase(st.delay_line.begin());
    st.delay_line.push_back(product);
  }

  if (trace_ != nullptr) {
    const auto i = static_cast<int>(index);
    trace_->record(cycle_, i, Signal::in, input.re().raw(), input.im().raw());
    trace_->record(cycle_, i, Signal::exponent, w.exponent);
    trace_->record(cycle_, i, Signal::out, out.re().raw(), out.im().raw());
  }
  return out;
}

std::optional<ComplexFixed> SdfPipeline::tick(const ComplexFixed& input) {
  if (!(input.format() == config_.datapath.format)) {
    throw std::invalid_argument("input sample format " + to_string(input.format()) + " does not match " +
                                to_string(config_.datapath.format));
  }
  const int n = config_.datapath.n_points;
  if (trace_ != nullptr) trace_->record(cycle_, -1, Signal::in, input.re().raw(), input.im().raw());

  ComplexFixed sample = input;
  for (std::size_t i = 0; i < layout_.size(); ++i) {
    sample = layout_[i].kind == StageKind::twiddle_mult ? step_multiplier(i, sample) : step_butterfly(i, sample);
    states_[i].position = (states_[i].position + 1) % n;
  }

  const bool valid = cycle_ >= static_cast<std::uint64_t>(latency_);
  if (trace_ != nullptr) {
    trace_->record(cycle_, -1, Signal::valid, valid ? 1 : 0);
    trace_->record(cycle_, -1, Signal::out, sample.re().raw(), sample.im().raw());
  }
  ++cycle_;
  if (!valid) return std::nullopt;
  return sample;
}

std::vector<ComplexFixed> SdfPipeline::drain() {
  std::vector<ComplexFixed> out;
  const ComplexFixed zero = ComplexFixed::zero(config_.datapath.format);
  for (int i = 0; i < latency_; ++i) {
    if (auto y = tick(zero)) out.push_back(*y);
  }
  return out;
}

RunResult run_frames(SdfPipeline& pipeline, const std::vector<FixedFrame>& frames) {
  const auto n = static_cast<std::size_t>(pipeline.config().datapath.n_points);
  if (pipeline.cycle() % n != 0) throw std::logic_error("pipeline is not on a frame boundary");
  for (const auto& f : frames) {
    if (f.size() != n) {
      throw std::invalid_argument("frame length " + std::to_string(f.size()) + " != N " + std::to_string(n));
    }
  }

  const std::uint64_t start = pipeline.cycle();
  const std::uint64_t first_valid = start + static_cast<std::uint64_t>(pipeline.latency());
  const std::size_t wanted = frames.size() * n;
  const ComplexFixed zero = ComplexFixed::zero(pipeline.config().datapath.format);

  std::vector<ComplexFixed> stream;
  stream.reserve(wanted);
  std::size_t fed = 0;
  while (stream.size() < wanted) {
    const ComplexFixed& x = fed < wanted ? frames[fed / n][fed % n] : zero;
    const std::uint64_t now = pipeline.cycle();
    const auto y = pipeline.tick(x);
    ++fed;
    if (now < first_valid) continue;
    if (!y) throw std::logic_error("pipeline produced no output on a primed clock");
    stream.push_back(*y);
  }

  RunResult result;
  result.latency = pipeline.latency();
  result.cycles = pipeline.cycle() - start;
  result.outputs.reserve(frames.size());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    FixedFrame out;
    out.domain = Domain::frequency;
    out.ordering = Ordering::bit_reversed;
    out.samples.assign(stream.begin() + static_cast<std::ptrdiff_t>(f * n),
                       stream.begin() + static_cast<std::ptrdiff_t>((f + 1) * n));
    result.outputs.push_back(std::move(out));
  }
  return result;
}

}  // namespace r22sdf
