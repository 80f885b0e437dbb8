#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qsv/metrics.hpp"
#include "qsv/pipeline.hpp"

namespace qsv::cli {

/// Flat `key = value` run configuration. Every key has a default; unknown
/// keys are rejected.
struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir = "qsv_out";
  std::string pattern = "frame%04d.pgm";
  std::string sequence;  // defaults to the input directory name
  int frames = 0;        // 0 = all available
  bool write_frames = true;

  Variant variant = Variant::dfsr;
  CheckMode check;
  std::string mask = "dynamic";  // fixed | dynamic | file:<path>
  std::uint64_t seed = 1;
  int refs = 3;
  int threads = 1;

  FsrParams fsr;
  MotionParams motion;
  EvalConfig eval;

  /// Applies one key/value pair; throws ConfigError on unknown keys or bad
  /// values.
  void set(std::string_view key, std::string_view value);
  std::string to_text() const;
  std::string sequence_name() const;
};

RunConfig parse_run_config(std::istream& in, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

/// Resolves the `mask` setting into a schedule for frames of the given size.
MaskSchedule resolve_mask(const RunConfig& cfg, int width, int height);

/// Mask schedule manifest: written next to the mask PGMs by `qsv mask`.
void write_schedule_manifest(const MaskSchedule& schedule, const std::filesystem::path& dir);
MaskSchedule read_schedule_manifest(const std::filesystem::path& manifest);

std::string format_double(double v);

}  // namespace qsv::cli
