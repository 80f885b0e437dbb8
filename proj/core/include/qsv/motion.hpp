#pragma once

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include "qsv/frame.hpp"

namespace qsv {

enum class CostMetric { mad, msd };

std::string_view to_string(CostMetric metric);
CostMetric parse_cost_metric(std::string_view text);

struct MotionParams {
  int search_range = 9;
  int template_radius = 4;  // (2r+1)^2 window
  int min_support = 8;
  CostMetric cost = CostMetric::mad;

  void validate() const;
};

enum class MotionStatus : std::uint8_t { candidate, accepted, rejected };

std::string_view to_string(MotionStatus status);

struct MotionEntry {
  bool valid = false;
  Vec2 v;
  double cost = std::numeric_limits<double>::infinity();
  MotionStatus status = MotionStatus::candidate;

  bool accepted() const { return valid && status == MotionStatus::accepted; }
  friend bool operator==(const MotionEntry&, const MotionEntry&) = default;
};

/// Dense per-pixel motion vectors from the current frame into the frame
/// `ref_offset` steps in the past. Only missing pixels carry valid entries.
class MotionField {
 public:
  MotionField() = default;
  MotionField(int width, int height, int ref_offset = 1)
      : entries_(width, height), ref_offset_(ref_offset) {}

  int width() const { return entries_.width(); }
  int height() const { return entries_.height(); }
  int ref_offset() const { return ref_offset_; }

  MotionEntry& operator[](Position p) { return entries_[p]; }
  const MotionEntry& operator[](Position p) const { return entries_[p]; }
  MotionEntry& at(int row, int col) { return entries_(row, col); }
  const MotionEntry& at(int row, int col) const { return entries_(row, col); }
  bool contains(Position p) const { return entries_.contains(p); }

  std::size_t valid_count() const;
  std::size_t count(MotionStatus status) const;

  /// Debug export: one CSV row per valid entry.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const MotionField&, const MotionField&) = default;

 private:
  Plane<MotionEntry> entries_;
  int ref_offset_ = 1;
};

/// Strict weak order used for all vector selections: lower cost, then
/// smaller |dy| + |dx|, then smaller dy, then smaller dx.
bool better_candidate(double cost_a, Vec2 a, double cost_b, Vec2 b);

/// Pixel-wise template matching of the measured pixels of `current` against
/// the dense `past` frame. For each target p and each v in [-S, S]^2 with
/// p + v inside the frame, the cost is the mean (absolute or squared)
/// difference over the measured window pixels q whose q + v is in-frame;
/// a v whose window holds fewer than min_support such pixels is skipped.
/// Targets must be missing pixels of `current`.
MotionField estimate(const SampledFrame& current, const Frame& past, const MotionParams& params,
                     const std::vector<Position>& targets, int ref_offset = 1, int threads = 1);

/// Estimates for every missing pixel of `current`.
MotionField estimate(const SampledFrame& current, const Frame& past, const MotionParams& params,
                     int ref_offset = 1, int threads = 1);

/// Matching cost of the past template centred at `at` against the measured
/// pixels of `current` displaced by v. Returns +inf if at + v leaves the
/// frame or fewer than min_support window pixels land on measurements.
double reverse_cost(const Frame& past, const SampledFrame& current, Position at, Vec2 v,
                    const MotionParams& params);

}  // namespace qsv
