#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsv/mask.hpp"
#include "qsv/metrics.hpp"
#include "report.hpp"
#include "run_config.hpp"

namespace qsv::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kIoError = 3,
  kDimensionError = 4,
  kFormatError = 5,
};

int exit_code_for(const std::exception& e);

struct MaskOptions {
  MaskMode mode = MaskMode::dynamic;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 1;
  std::filesystem::path out = "masks";
};

/// Writes mask_<p>.pgm for each phase plus schedule.txt.
MaskSchedule cmd_mask(const MaskOptions& opts);

struct SampleOptions {
  std::filesystem::path input;
  std::filesystem::path out;
  std::string pattern = "frame%04d.pgm";
  std::string mask = "dynamic";
  std::uint64_t seed = 1;
};

/// Sensor simulation: writes the sampled frames (zeros where unmeasured).
void cmd_sample(const SampleOptions& opts);

/// Reconstructs the configured sequence and writes frames, report.txt,
/// frames.csv and run.cfg into cfg.output_dir.
RunReport cmd_run(const RunConfig& cfg, std::ostream& log);

struct CompareOptions {
  std::vector<std::filesystem::path> reports;
  int baseline = 0;  // index into reports
};

/// Table of sequence averages plus per-frame PSNR gain against the baseline.
void cmd_compare(const CompareOptions& opts, std::ostream& out);

struct EvalOptions {
  std::filesystem::path reference;
  std::filesystem::path test;
  std::string pattern = "frame%04d.pgm";
  EvalConfig eval;
};

/// CSV rows frame,psnr_db,ssim followed by a mean row.
void cmd_eval(const EvalOptions& opts, std::ostream& out);

}  // namespace qsv::cli
