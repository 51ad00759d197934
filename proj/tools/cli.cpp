#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "r22sdf/complex_mult.hpp"
#include "r22sdf/metrics.hpp"
#include "r22sdf/radix22.hpp"
#include "r22sdf/sdf_pipeline.hpp"
#include "r22sdf/signals.hpp"
#include "r22sdf/verify.hpp"

namespace r22sdf::cli {

namespace {

namespace fs = std::filesystem;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Everything a run needs; defaults reproduce the 8-point 16-bit build.
struct RunConfig {
  int n_points = 8;
  int word_bits = 16;
  int frac_bits = -1;  // -1: word_bits - 1
  int slice_b = 4;
  int slice_p = 4;
  std::string rounding = "half-away";
  bool no_scale_bf1 = false;
  bool no_scale_bf2 = false;
  int twiddle_shift = 6;
  bool no_unity_bypass = false;
  int multiplier_depth = 1;
  std::uint64_t seed = 1;
  std::size_t frames = 1;
  std::string input = "uniform";
  std::string input_file;
  std::string out_dir = "out";

  PipelineConfig pipeline() const {
    PipelineConfig pc;
    DatapathConfig& dp = pc.datapath;
    dp.n_points = n_points;
    dp.format = FixedFormat::make(word_bits, frac_bits < 0 ? word_bits - 1 : frac_bits);
    dp.slicing = SliceConfig::make(slice_b, slice_p);
    dp.rounding = parse_rounding(rounding);
    dp.scale_bf1 = !no_scale_bf1;
    dp.scale_bf2 = !no_scale_bf2;
    dp.twiddle_shift = twiddle_shift;
    dp.unity_bypass = !no_unity_bypass;
    pc.multiplier_depth = multiplier_depth;
    pc.validate();
    return pc;
  }
};

std::string summarize(const PipelineConfig& pc) {
  const DatapathConfig& dp = pc.datapath;
  std::ostringstream os;
  os << "N=" << dp.n_points << " " << to_string(dp.format) << " b=" << dp.slicing.blocks
     << " p=" << dp.slicing.bits_per_block << " rounding=" << to_string(dp.rounding)
     << " scale_bf1=" << dp.scale_bf1 << " scale_bf2=" << dp.scale_bf2 << " shift=" << dp.twiddle_shift
     << " unity_bypass=" << dp.unity_bypass << " mult_depth=" << pc.multiplier_depth;
  return os.str();
}

// Gain that maps the scaled fixed-point output back to the unscaled DFT.
double output_gain(const SdfPipeline& pipeline) {
  double gain = 1.0;
  for (const auto& s : pipeline.layout()) {
    if (s.kind == StageKind::bf2i && pipeline.config().datapath.scale_bf1) gain *= 2.0;
    if (s.kind == StageKind::bf2ii && pipeline.config().datapath.scale_bf2) gain *= 2.0;
  }
  return gain;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os.imbue(std::locale::classic());
  writer(os);
  os.flush();
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<DoubleFrame> load_corpus(const RunConfig& rc) {
  if (!rc.input_file.empty()) {
    std::ifstream is(rc.input_file);
    if (!is) throw IoError("cannot open input file '" + rc.input_file + "'");
    try {
      return read_frames_csv(is, rc.n_points);
    } catch (const std::runtime_error& e) {
      throw ConfigError(rc.input_file + ": " + e.what());
    }
  }
  if (rc.frames == 0) throw ConfigError("--frames must be >= 1");
  if (rc.input == "uniform") return uniform_random_frames(rc.n_points, rc.frames, rc.seed);
  if (rc.input == "impulse") return std::vector<DoubleFrame>(rc.frames, impulse_frame(rc.n_points, 0.5));
  if (rc.input == "sine") return std::vector<DoubleFrame>(rc.frames, cosine_frame(rc.n_points, 1, 0.5));
  throw ConfigError("unknown input generator '" + rc.input + "'");
}

std::vector<DoubleFrame> reference_spectra(const std::vector<DoubleFrame>& corpus) {
  std::vector<DoubleFrame> ref;
  ref.reserve(corpus.size());
  for (const auto& f : corpus) ref.push_back(dft_reference(f));
  return ref;
}

struct Evaluation {
  ErrorReport report;
  RunResult run;
  std::vector<FixedFrame> natural;
};

Evaluation evaluate(const PipelineConfig& pc, const std::vector<DoubleFrame>& corpus,
                    const std::vector<DoubleFrame>& reference, const std::string& corpus_id,
                    TraceRecorder* trace = nullptr) {
  SdfPipeline pipeline(pc);
  if (trace != nullptr) pipeline.attach_trace(trace);
  Evaluation ev;
  ev.run = run_frames(pipeline, quantize_frames(corpus, pc.datapath.format));
  for (const auto& f : ev.run.outputs) ev.natural.push_back(to_natural_order(f));
  ev.report = compare(reference, ev.natural, output_gain(pipeline), corpus_id, summarize(pc));
  return ev;
}

std::string corpus_name(const RunConfig& rc) {
  if (!rc.input_file.empty()) return "file:" + rc.input_file;
  std::ostringstream os;
  os << rc.input << " N=" << rc.n_points << " frames=" << rc.frames;
  if (rc.input == "uniform") os << " seed=" << rc.seed;
  return os.str();
}

int cmd_run(const RunConfig& rc, bool trace_enabled, const std::string& order, std::ostream& out) {
  const PipelineConfig pc = rc.pipeline();
  if (order != "bit-reversed" && order != "natural") throw ConfigError("--order must be natural or bit-reversed");
  const auto corpus = load_corpus(rc);
  const auto reference = reference_spectra(corpus);
  TraceRecorder trace;
  const Evaluation ev = evaluate(pc, corpus, reference, corpus_name(rc), trace_enabled ? &trace : nullptr);

  ensure_dir(rc.out_dir);
  const fs::path dir(rc.out_dir);
  write_file(dir / "output.csv", [&](std::ostream& os) {
    write_frames_csv(os, order == "natural" ? ev.natural : ev.run.outputs);
  });
  write_file(dir / "report.txt", [&](std::ostream& os) {
    write_text(os, ev.report);
    os << "latency:       " << ev.run.latency << " cycles\n"
       << "clocks:        " << ev.run.cycles << "\n";
  });
  write_file(dir / "report.csv", [&](std::ostream& os) {
    write_csv(os, ev.report);
    os << "latency_cycles," << ev.run.latency << "\n";
  });
  if (trace_enabled) write_file(dir / "trace.csv", [&](std::ostream& os) { trace.write_csv(os); });

  out << "config:   " << summarize(pc) << "\n"
      << "corpus:   " << corpus_name(rc) << "\n"
      << "latency:  " << ev.run.latency << " cycles\n"
      << "SQNR:     " << format_number(ev.report.sqnr_db) << " dB\n"
      << "max|err|: " << format_number(ev.report.max_abs_err) << "\n"
      << "output:   " << (dir / "output.csv").string() << " (" << order << " order)\n";
  return kSuccess;
}

int report_check(const verify::CheckResult& r, std::ostream& out) {
  if (r.passed) {
    out << "PASS " << r.name << ": " << r.cases << " cases\n";
    return kSuccess;
  }
  out << "FAIL " << r.name << " after " << r.cases << " cases\n  counterexample: " << r.counterexample << "\n";
  return kCounterexample;
}

int cmd_verify(const RunConfig& rc, const std::string& level, int fault_bit, std::ostream& out) {
  if (level != "quick" && level != "exhaustive") throw ConfigError("--level must be quick or exhaustive");
  const bool full = level == "exhaustive";
  const std::uint64_t seed = rc.seed;
  const SliceConfig default_slicing{4, 4};

  std::vector<std::function<verify::CheckResult()>> checks;
  checks.emplace_back([=] { return verify::multiplier_exhaustive(SliceConfig{2, 4}, fault_bit); });
  checks.emplace_back([=] { return verify::multiplier_random(default_slicing, full ? 1'000'000 : 100'000, seed, fault_bit); });
  if (full) checks.emplace_back([=] { return verify::cmul3_exhaustive(8, 4, fault_bit); });
  checks.emplace_back([=] { return verify::cmul3_random(16, 4, full ? 1'000'000 : 100'000, seed, fault_bit); });
  for (int n : {8, 16, 32, 64}) {
    checks.emplace_back([=] { return verify::fft_vs_dft(n, full ? 1000 : 100, seed); });
  }
  for (int n : {8, 16, 32}) {
    checks.emplace_back([=] {
      PipelineConfig pc = rc.pipeline();
      pc.datapath.n_points = n;
      const std::uint64_t frames = n == 8 ? (full ? 10'000 : 1000) : (full ? 1000 : 100);
      return verify::pipeline_vs_functional(pc, frames, seed);
    });
  }

  std::uint64_t total = 0;
  for (const auto& check : checks) {
    const auto r = check();
    total += r.cases;
    if (report_check(r, out) != kSuccess) return kCounterexample;
  }
  out << "all checks passed: " << total << " cases\n";
  return kSuccess;
}

// Largest block size not above `preferred` that divides the word length.
int block_size_for(int word_bits, int preferred) {
  for (int p = std::min(preferred, word_bits); p > 1; --p) {
    if (word_bits % p == 0) return p;
  }
  return 1;
}

int cmd_sweep(const RunConfig& rc, const std::string& axis, int from, int to, std::ostream& out) {
  const PipelineConfig base = rc.pipeline();
  struct Row {
    std::string value;
    PipelineConfig config;
  };
  std::vector<Row> rows;
  if (axis == "word-bits") {
    if (from > to) throw ConfigError("empty word-bits range");
    for (int w = from; w <= to; ++w) {
      PipelineConfig pc = base;
      pc.datapath.format = FixedFormat::make(w, w - 1);
      const int p = block_size_for(w, base.datapath.slicing.bits_per_block);
      pc.datapath.slicing = SliceConfig::make(w / p, p);
      pc.validate();
      rows.push_back({std::to_string(w), pc});
    }
  } else if (axis == "slice") {
    if (from > to) throw ConfigError("empty slice range");
    const int w = base.datapath.format.word_bits;
    for (int p = std::max(from, 1); p <= to; ++p) {
      if (w % p != 0) continue;
      PipelineConfig pc = base;
      pc.datapath.slicing = SliceConfig::make(w / p, p);
      rows.push_back({std::to_string(w / p) + "x" + std::to_string(p), pc});
    }
    if (rows.empty()) throw ConfigError("no block size in range divides word_bits");
  } else if (axis == "rounding") {
    for (Rounding r : {Rounding::truncate, Rounding::half_away}) {
      PipelineConfig pc = base;
      pc.datapath.rounding = r;
      rows.push_back({to_string(r), pc});
    }
  } else {
    throw ConfigError("--axis must be word-bits, slice or rounding");
  }

  const auto corpus = uniform_random_frames(rc.n_points, rc.frames, rc.seed);
  const auto reference = reference_spectra(corpus);
  const std::string id = "uniform N=" + std::to_string(rc.n_points) + " frames=" + std::to_string(rc.frames) +
                         " seed=" + std::to_string(rc.seed);

  // Rows are independent; results are assembled in row order.
  std::vector<std::future<ErrorReport>> jobs;
  for (const auto& row : rows) {
    jobs.push_back(std::async(std::launch::async, [&corpus, &reference, &id, pc = row.config] {
      return evaluate(pc, corpus, reference, id).report;
    }));
  }

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << "axis,value,word_bits,frac_bits,slice_b,slice_p,rounding,sqnr_db,max_abs_err,rms_err\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ErrorReport rep = jobs[i].get();
    const DatapathConfig& dp = rows[i].config.datapath;
    csv << axis << ',' << rows[i].value << ',' << dp.format.word_bits << ',' << dp.format.frac_bits << ','
        << dp.slicing.blocks << ',' << dp.slicing.bits_per_block << ',' << to_string(dp.rounding) << ','
        << format_number(rep.sqnr_db) << ',' << format_number(rep.max_abs_err) << ','
        << format_number(rep.rms_err) << '\n';
  }

  ensure_dir(rc.out_dir);
  write_file(fs::path(rc.out_dir) / "sweep.csv", [&](std::ostream& os) { os << csv.str(); });
  out << csv.str();
  return kSuccess;
}

int cmd_twiddle_dump(const RunConfig& rc, int stage, std::ostream& out) {
  const FixedFormat fmt = FixedFormat::make(rc.word_bits, rc.frac_bits < 0 ? rc.word_bits - 1 : rc.frac_bits);
  TwiddleRom rom;
  try {
    rom = gen_twiddle_rom(rc.n_points, stage, fmt, rc.twiddle_shift);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  std::ostringstream csv;
  csv.imbue(std::locale::classic());
  csv << "k,exponent,stored_re,stored_im,exact_re,exact_im,fits_" << rom.stored_bits << "_bits\n";
  for (const auto& e : rom.entries) {
    const bool fits = fits_signed(e.stored_re, rom.stored_bits) && fits_signed(e.stored_im, rom.stored_bits);
    csv << e.slot << ',' << e.exponent << ',' << e.stored_re << ',' << e.stored_im << ',' << e.exact_re << ','
        << e.exact_im << ',' << (fits ? 1 : 0) << '\n';
  }
  ensure_dir(rc.out_dir);
  const fs::path path = fs::path(rc.out_dir) /
                        ("twiddle_n" + std::to_string(rc.n_points) + "_s" + std::to_string(stage) + ".csv");
  write_file(path, [&](std::ostream& os) { os << csv.str(); });
  out << csv.str();
  const bool ok = rom.all_fit();
  out << (ok ? "all" : "NOT all") << " stored components fit " << rom.stored_bits << " bits -> " << path.string()
      << "\n";
  return ok ? kSuccess : kCounterexample;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-accurate radix-2^2 SDF FFT model with digit-sliced shift-add multipliers", "r22sdf"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags take precedence");

  RunConfig rc;
  app.add_option("--n", rc.n_points, "FFT length N (power of two >= 8)")->capture_default_str();
  app.add_option("--word-bits", rc.word_bits, "data word length")->capture_default_str();
  app.add_option("--frac-bits", rc.frac_bits, "fraction bits (default word-bits - 1)");
  app.add_option("--slice-b", rc.slice_b, "digit-slice block count b")->capture_default_str();
  app.add_option("--slice-p", rc.slice_p, "bits per block p")->capture_default_str();
  app.add_option("--rounding", rc.rounding, "half-away | truncate")->capture_default_str();
  app.add_flag("--no-scale-bf1", rc.no_scale_bf1, "BF2I keeps its growth bit instead of halving");
  app.add_flag("--no-scale-bf2", rc.no_scale_bf2, "BF2II keeps its growth bit instead of halving");
  app.add_option("--twiddle-shift", rc.twiddle_shift, "right shift applied to stored twiddles")->capture_default_str();
  app.add_flag("--no-unity-bypass", rc.no_unity_bypass, "route W^0 slots through the multiplier");
  app.add_option("--multiplier-depth", rc.multiplier_depth, "register depth of each twiddle multiplier")
      ->capture_default_str();
  app.add_option("--seed", rc.seed, "corpus seed")->capture_default_str();
  app.add_option("--frames", rc.frames, "frame count")->capture_default_str();
  app.add_option("--input", rc.input, "generator: uniform | impulse | sine")->capture_default_str();
  app.add_option("--input-file", rc.input_file, "CSV frame file (index,re,im decimals)");
  app.add_option("--out", rc.out_dir, "artifact directory")->capture_default_str();

  auto* run_cmd = app.add_subcommand("run", "stream frames through the pipeline and report accuracy");
  bool trace_enabled = false;
  std::string order = "bit-reversed";
  run_cmd->add_flag("--trace", trace_enabled, "write the per-cycle trace.csv");
  run_cmd->add_option("--order", order, "output.csv ordering: bit-reversed | natural")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "run the oracle equivalence checks");
  std::string level = "quick";
  int fault_bit = -1;
  verify_cmd->add_option("--level", level, "quick | exhaustive")->capture_default_str();
  verify_cmd->add_option("--inject-fault", fault_bit, "test hook: corrupt one shift weight of the multiplier");

  auto* sweep_cmd = app.add_subcommand("sweep", "SQNR over a configuration axis");
  std::string axis = "word-bits";
  int from = 10;
  int to = 16;
  sweep_cmd->add_option("--axis", axis, "word-bits | slice | rounding")->capture_default_str();
  sweep_cmd->add_option("--from", from, "first value (word bits, or block size p)")->capture_default_str();
  sweep_cmd->add_option("--to", to, "last value, inclusive")->capture_default_str();

  auto* dump_cmd = app.add_subcommand("twiddle-dump", "write a twiddle ROM with a storage-width check");
  int stage = 0;
  dump_cmd->add_option("--stage", stage, "twiddle multiplier index")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::FileError& e) {
    err << e.what() << "\n";
    return kIoError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(rc, trace_enabled, order, out);
    if (*verify_cmd) return cmd_verify(rc, level, fault_bit, out);
    if (*sweep_cmd) return cmd_sweep(rc, axis, from, to, out);
    if (*dump_cmd) return cmd_twiddle_dump(rc, stage, out);
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace r22sdf::cli
