#pragma once

#include <cstdint>
#include <vector>

#include "qsv/frame.hpp"
#include "qsv/motion.hpp"

namespace qsv {

/// Per-pixel accumulator of values projected from past frames.
class ProjectionBuffer {
 public:
  ProjectionBuffer() = default;
  ProjectionBuffer(int width, int height);

  int width() const { return sum_.width(); }
  int height() const { return sum_.height(); }
  bool empty() const;

  void add(Position p, double value);
  int count(Position p) const { return count_[p]; }
  double sum(Position p) const { return sum_[p]; }
  bool has(Position p) const { return count_[p] > 0; }
  /// Mean of the contributions; 0 where there are none.
  double value(Position p) const;
  std::size_t covered() const;

  /// Element-wise sum of two buffers (associative and commutative).
  void merge(const ProjectionBuffer& other);

  const Plane<std::int32_t>& counts() const { return count_; }

  friend bool operator==(const ProjectionBuffer&, const ProjectionBuffer&) = default;

 private:
  Plane<double> sum_;
  Plane<std::int32_t> count_;
};

/// Buffer contents as an additional measurement layer for reconstruction.
struct ProjectionOverlay {
  Plane<double> values;
  Plane<std::uint8_t> mask;
};

/// Adds, for each accepted entry (p, v), the measurement at p + v of the
/// past frame when that position was measured. Reconstructed (model) values
/// of past frames are never projected.
void project(const MotionField& field, const SampledFrame& past_sampled,
             ProjectionBuffer& buffer);

ProjectionOverlay to_sampled_overlay(const ProjectionBuffer& buffer);

}  // namespace qsv
