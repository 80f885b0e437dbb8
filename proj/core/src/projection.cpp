#include "qsv/projection.hpp"

namespace qsv {

ProjectionBuffer::ProjectionBuffer(int width, int height)
    : sum_(width, height, 0.0), count_(width, height, 0) {}

bool ProjectionBuffer::empty() const { return covered() == 0; }

void ProjectionBuffer::add(Position p, double value) {
  sum_[p] += value;
  count_[p] += 1;
}

double ProjectionBuffer::value(Position p) const {
  const int n = count_[p];
  return n > 0 ? sum_[p] / n : 0.0;
}

std::size_t ProjectionBuffer::covered() const {
  std::size_t n = 0;
  for (auto c : count_.values()) n += c > 0 ? 1 : 0;
  return n;
}

void ProjectionBuffer::merge(const ProjectionBuffer& other) {
  if (!sum_.same_shape(other.sum_)) throw DimensionError("projection buffers differ in size");
  for (std::size_t i = 0; i < sum_.size(); ++i) {
    sum_.values()[i] += other.sum_.values()[i];
    count_.values()[i] += other.count_.values()[i];
  }
}

void project(const MotionField& field, const SampledFrame& past_sampled, ProjectionBuffer& buffer) {
  if (field.width() != past_sampled.width() || field.height() != past_sampled.height() ||
      buffer.width() != field.width() || buffer.height() != field.height()) {
    throw DimensionError("projection inputs differ in size");
  }
  for (int r = 0; r < field.height(); ++r) {
    for (int c = 0; c < field.width(); ++c) {
      const auto& e = field.at(r, c);
      if (!e.accepted()) continue;
      const Position q = Position{r, c} + e.v;
      if (!past_sampled.frame().contains(q) || !past_sampled.measured(q)) continue;
      buffer.add({r, c}, past_sampled.value(q));
    }
  }
}

ProjectionOverlay to_sampled_overlay(const ProjectionBuffer& buffer) {
  ProjectionOverlay ov{Plane<double>(buffer.width(), buffer.height(), 0.0),
                       Plane<std::uint8_t>(buffer.width(), buffer.height(), 0)};
  for (int r = 0; r < buffer.height(); ++r) {
    for (int c = 0; c < buffer.width(); ++c) {
      if (buffer.has({r, c})) {
        ov.values(r, c) = buffer.value({r, c});
        ov.mask(r, c) = 1;
      }
    }
  }
  return ov;
}

}  // namespace qsv
