#pragma once

#include <deque>
#include <string_view>
#include <vector>

#include "qsv/consistency.hpp"
#include "qsv/fsr.hpp"
#include "qsv/mask.hpp"
#include "qsv/motion.hpp"

namespace qsv {

/// single_fsr: per-frame reconstruction only. rfsr: projected pixels also
/// overwrite the final model. dfsr: projected pixels only shape the model.
enum class Variant { single_fsr, rfsr, dfsr };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

struct PipelineConfig {
  MaskSchedule masks;
  FsrParams fsr;
  MotionParams motion;
  CheckMode check;
  int refs = 3;
  Variant variant = Variant::dfsr;
  int threads = 1;

  void validate() const;
  bool recursive() const { return variant != Variant::single_fsr && refs > 0; }
};

/// Wall-clock seconds per stage, summed over frames.
struct StageTimings {
  double me = 0.0;
  double cc = 0.0;
  double fsr = 0.0;
  double total = 0.0;

  StageTimings& operator+=(const StageTimings& o);
};

struct FrameDiagnostics {
  int t = 0;
  int references = 0;
  std::size_t missing = 0;
  std::size_t candidates = 0;  // valid motion entries over all references
  std::size_t accepted = 0;
  std::size_t projected = 0;   // missing pixels with at least one projection
};

/// The last `capacity` reconstructions with the measurements they came from;
/// entry(1) is the most recent.
class History {
 public:
  explicit History(int capacity) : capacity_(capacity) {}

  struct Entry {
    Frame reconstruction;
    SampledFrame sampled;
  };

  void push(Frame reconstruction, SampledFrame sampled);
  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  const Entry& entry(int d) const;

 private:
  int capacity_;
  std::deque<Entry> entries_;
};

/// Reconstructs one frame from its measurements and the history, then
/// pushes the result. Optional outputs accumulate.
Frame reconstruct_next(History& history, const SampledFrame& sampled, const PipelineConfig& config,
                       StageTimings* timings = nullptr, CheckStats* stats = nullptr,
                       FrameDiagnostics* diagnostics = nullptr);

/// The projection buffer frame `sampled` would receive from the history.
ProjectionBuffer gather_projections(const History& history, const SampledFrame& sampled,
                                    const PipelineConfig& config, StageTimings* timings = nullptr,
                                    CheckStats* stats = nullptr,
                                    FrameDiagnostics* diagnostics = nullptr);

struct RunResult {
  std::vector<Frame> reconstructions;
  std::vector<FrameDiagnostics> diagnostics;
  StageTimings timings;
  CheckStats stats;
};

/// Causal recursive reconstruction of a sequence: frame t sees only its own
/// measurements and frames before it.
RunResult run_sequence(const std::vector<Frame>& truth, const PipelineConfig& config);

}  // namespace qsv
