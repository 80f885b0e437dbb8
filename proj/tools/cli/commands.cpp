#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qsv/frame_io.hpp"
#include "qsv/pipeline.hpp"

namespace qsv::cli {
namespace {

std::map<std::string, std::string> config_map(const RunConfig& cfg) {
  std::istringstream in(cfg.to_text());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find(" = ");
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return kv;
}

std::vector<FrameScore> score_frames(const std::vector<Frame>& ref, const std::vector<Frame>& test,
                                     const EvalConfig& eval) {
  if (ref.size() != test.size()) {
    throw DimensionError("sequences differ in length: " + std::to_string(ref.size()) + " vs " +
                         std::to_string(test.size()));
  }
  std::vector<FrameScore> scores;
  for (std::size_t t = 0; t < ref.size(); ++t) {
    scores.push_back({psnr(ref[t], test[t], eval), ssim(ref[t], test[t], eval)});
  }
  return scores;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const IoError*>(&e)) return kIoError;
  if (dynamic_cast<const DimensionError*>(&e)) return kDimensionError;
  if (dynamic_cast<const FormatError*>(&e)) return kFormatError;
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kIoError;
  return kFailure;
}

MaskSchedule cmd_mask(const MaskOptions& opts) {
  MaskSchedule schedule = generate_schedule(opts.mode, opts.width, opts.height, opts.seed);
  write_schedule_manifest(schedule, opts.out);
  return schedule;
}

void cmd_sample(const SampleOptions& opts) {
  const auto frames = io::read_sequence(opts.input, opts.pattern);
  RunConfig cfg;
  cfg.mask = opts.mask;
  cfg.seed = opts.seed;
  const MaskSchedule schedule = resolve_mask(cfg, frames.front().width(), frames.front().height());
  std::filesystem::create_directories(opts.out);
  for (const auto& f : frames) {
    SampledFrame s = apply_mask(f, schedule.mask_for(f.t()));
    io::write_frame(s.frame(), opts.out / io::format_name(opts.pattern, f.t()));
  }
  write_schedule_manifest(schedule, opts.out / "masks");
}

RunReport cmd_run(const RunConfig& cfg, std::ostream& log) {
  if (cfg.input_dir.empty()) throw ConfigError("input_dir is not set");
  if (cfg.frames < 0) throw ConfigError("frames must be >= 0");
  auto truth = io::read_sequence(cfg.input_dir, cfg.pattern);
  if (cfg.frames > 0 && static_cast<std::size_t>(cfg.frames) < truth.size()) {
    truth.resize(static_cast<std::size_t>(cfg.frames));
  }
  const int width = truth.front().width(), height = truth.front().height();
  cfg.eval.validate(width, height);

  PipelineConfig pc;
  pc.masks = resolve_mask(cfg, width, height);
  pc.fsr = cfg.fsr;
  pc.motion = cfg.motion;
  pc.check = cfg.check;
  pc.refs = cfg.refs;
  pc.variant = cfg.variant;
  pc.threads = cfg.threads;

  log << "reconstructing " << truth.size() << " frames of " << dims(width, height) << " ("
      << to_string(cfg.variant) << ", check " << to_string(cfg.check.kind) << ", mask "
      << cfg.mask << ")\n";
  const RunResult result = run_sequence(truth, pc);

  RunReport report;
  report.config = config_map(cfg);
  report.timings = result.timings;
  report.checks = result.stats;
  const auto scores = score_frames(truth, result.reconstructions, cfg.eval);
  for (std::size_t t = 0; t < scores.size(); ++t) {
    report.frames.push_back({static_cast<int>(t), scores[t].psnr, scores[t].ssim,
                             result.diagnostics[t]});
  }
  report.summary = sequence_summary(scores);

  std::filesystem::create_directories(cfg.output_dir);
  if (cfg.write_frames) {
    io::write_sequence(result.reconstructions, cfg.output_dir / "recon", cfg.pattern);
  }
  {
    std::ofstream out(cfg.output_dir / "report.txt");
    if (!out) throw IoError("cannot write " + (cfg.output_dir / "report.txt").string());
    write_report(report, out);
  }
  {
    std::ofstream out(cfg.output_dir / "frames.csv");
    if (!out) throw IoError("cannot write " + (cfg.output_dir / "frames.csv").string());
    out << "frame,psnr_db,ssim\n";
    for (const auto& f : report.frames) {
      out << f.frame << ',' << format_double(f.psnr_db) << ',' << format_double(f.ssim) << '\n';
    }
  }
  {
    std::ofstream out(cfg.output_dir / "run.cfg");
    if (!out) throw IoError("cannot write " + (cfg.output_dir / "run.cfg").string());
    out << cfg.to_text();
  }

  log << "PSNR " << report.summary.mean_psnr << " dB, SSIM " << report.summary.mean_ssim
      << "; ME " << result.timings.me << " s, CC " << result.timings.cc << " s, FSR "
      << result.timings.fsr << " s, total " << result.timings.total << " s\n";
  return report;
}

void cmd_compare(const CompareOptions& opts, std::ostream& out) {
  if (opts.reports.size() < 2) throw ConfigError("compare needs at least two reports");
  if (opts.baseline < 0 || static_cast<std::size_t>(opts.baseline) >= opts.reports.size()) {
    throw ConfigError("baseline index out of range");
  }
  std::vector<RunReport> reports;
  for (const auto& p : opts.reports) reports.push_back(load_report(p));

  const auto& base = reports[static_cast<std::size_t>(opts.baseline)];
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].get("sequence") != base.get("sequence")) {
      throw ConfigError("incompatible reports: sequence '" + reports[i].get("sequence") +
                        "' vs '" + base.get("sequence") + "'");
    }
    if (reports[i].frames.size() != base.frames.size()) {
      throw ConfigError("incompatible reports: " + opts.reports[i].string() + " has " +
                        std::to_string(reports[i].frames.size()) + " frames, baseline has " +
                        std::to_string(base.frames.size()));
    }
  }

  out << "[table]\n";
  out << "run,sequence,variant,check,mask,psnr_mean,ssim_mean,cc_seconds\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << opts.reports[i].string() << ',' << r.get("sequence") << ',' << r.get("variant") << ','
        << r.get("check") << ',' << r.get("mask") << ',' << format_double(r.summary.mean_psnr)
        << ',' << format_double(r.summary.mean_ssim) << ',' << format_double(r.timings.cc) << '\n';
  }

  out << "[gain]\n";
  out << "# PSNR gain in dB relative to " << opts.reports[static_cast<std::size_t>(opts.baseline)].string() << '\n';
  out << "frame";
  for (std::size_t i = 0; i < reports.size(); ++i) out << ",run" << i;
  out << '\n';
  for (std::size_t t = 0; t < base.frames.size(); ++t) {
    out << t;
    for (const auto& r : reports) {
      const double a = r.frames[t].psnr_db, b = base.frames[t].psnr_db;
      const double gain = (std::isinf(a) && std::isinf(b)) ? 0.0 : a - b;
      out << ',' << format_double(gain);
    }
    out << '\n';
  }
}

void cmd_eval(const EvalOptions& opts, std::ostream& out) {
  const auto ref = io::read_sequence(opts.reference, opts.pattern);
  const auto test = io::read_sequence(opts.test, opts.pattern);
  const auto scores = score_frames(ref, test, opts.eval);
  out << "frame,psnr_db,ssim\n";
  for (std::size_t t = 0; t < scores.size(); ++t) {
    out << t << ',' << format_double(scores[t].psnr) << ',' << format_double(scores[t].ssim) << '\n';
  }
  const auto summary = sequence_summary(scores);
  out << "mean," << format_double(summary.mean_psnr) << ',' << format_double(summary.mean_ssim)
      << '\n';
}

}  // namespace qsv::cli
