#include "qsv/pipeline.hpp"

#include <chrono>

#include "qsv/projection.hpp"

namespace qsv {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::single_fsr: return "single_fsr";
    case Variant::rfsr: return "rfsr";
    case Variant::dfsr: return "dfsr";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "single_fsr") return Variant::single_fsr;
  if (text == "rfsr") return Variant::rfsr;
  if (text == "dfsr") return Variant::dfsr;
  throw ConfigError("unknown variant '" + std::string(text) + "'");
}

void PipelineConfig::validate() const {
  if (masks.period() == 0) throw ConfigError("pipeline needs a mask schedule");
  if (refs < 0) throw ConfigError("refs must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  fsr.validate();
  motion.validate();
  check.validate(motion);
}

StageTimings& StageTimings::operator+=(const StageTimings& o) {
  me += o.me;
  cc += o.cc;
  fsr += o.fsr;
  total += o.total;
  return *this;
}

void History::push(Frame reconstruction, SampledFrame sampled) {
  if (capacity_ <= 0) return;
  entries_.push_front({std::move(reconstruction), std::move(sampled)});
  while (static_cast<int>(entries_.size()) > capacity_) entries_.pop_back();
}

const History::Entry& History::entry(int d) const {
  if (d < 1 || d > size()) throw Error("history has no entry " + std::to_string(d));
  return entries_[static_cast<std::size_t>(d - 1)];
}

ProjectionBuffer gather_projections(const History& history, const SampledFrame& sampled,
                                    const PipelineConfig& config, StageTimings* timings,
                                    CheckStats* stats, FrameDiagnostics* diagnostics) {
  ProjectionBuffer buffer(sampled.width(), sampled.height());
  if (!config.recursive()) return buffer;

  const int refs = std::min(config.refs, history.size());
  const auto targets = sampled.missing_positions();
  for (int d = 1; d <= refs; ++d) {
    const auto& past = history.entry(d);
    if (past.reconstruction.width() != sampled.width() ||
        past.reconstruction.height() != sampled.height()) {
      throw DimensionError("history frame size differs from the current frame");
    }
    auto t0 = Clock::now();
    MotionField field = estimate(sampled, past.reconstruction, config.motion, targets, d, config.threads);
    const double me = seconds_since(t0);

    t0 = Clock::now();
    MotionField checked = apply_check(field, sampled, past.reconstruction, config.motion,
                                      config.check, stats, config.threads);
    const double cc = seconds_since(t0);

    project(checked, past.sampled, buffer);

    if (timings) {
      timings->me += me;
      timings->cc += cc;
    }
    if (diagnostics) {
      diagnostics->candidates += checked.valid_count();
      diagnostics->accepted += checked.count(MotionStatus::accepted);
    }
  }
  if (diagnostics) {
    diagnostics->references = refs;
    diagnostics->projected = buffer.covered();
  }
  return buffer;
}

Frame reconstruct_next(History& history, const SampledFrame& sampled, const PipelineConfig& config,
                       StageTimings* timings, CheckStats* stats, FrameDiagnostics* diagnostics) {
  FrameDiagnostics diag;
  diag.t = sampled.t();
  diag.missing = sampled.mask().bits().size() - sampled.mask().count();

  ProjectionBuffer buffer = gather_projections(history, sampled, config, timings, stats, &diag);

  const auto t0 = Clock::now();
  Frame reconstruction = reconstruct_frame(sampled, &buffer, config.fsr,
                                           config.variant == Variant::rfsr, config.threads);
  if (timings) timings->fsr += seconds_since(t0);

  history.push(reconstruction, sampled);
  if (diagnostics) *diagnostics = diag;
  return reconstruction;
}

RunResult run_sequence(const std::vector<Frame>& truth, const PipelineConfig& config) {
  if (truth.empty()) throw Error("run_sequence needs at least one frame");
  config.validate();
  const int width = truth.front().width(), height = truth.front().height();
  if (config.masks.width() != width || config.masks.height() != height) {
    throw DimensionError("mask schedule is " + dims(config.masks.width(), config.masks.height()) +
                         " but frames are " + dims(width, height));
  }

  const auto start = Clock::now();
  RunResult result;
  History history(config.recursive() ? config.refs : 0);
  for (std::size_t t = 0; t < truth.size(); ++t) {
    if (truth[t].width() != width || truth[t].height() != height) {
      throw DimensionError("frame " + std::to_string(t) + " is " +
                           dims(truth[t].width(), truth[t].height()) + ", expected " +
                           dims(width, height));
    }
    const int ti = static_cast<int>(t);
    SampledFrame sampled = apply_mask(truth[t].with_index(ti), config.masks.mask_for(ti));
    FrameDiagnostics diag;
    result.reconstructions.push_back(
        reconstruct_next(history, sampled, config, &result.timings, &result.stats, &diag));
    result.diagnostics.push_back(diag);
  }
  result.timings.total = seconds_since(start);
  return result;
}

}  // namespace qsv
