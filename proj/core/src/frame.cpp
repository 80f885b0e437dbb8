#include "qsv/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsv {

Frame::Frame(int width, int height, int t) : pixels_(width, height, 0.0), t_(t) {
  if (t < 0) throw DimensionError("frame index must be non-negative");
}

Frame::Frame(int width, int height, std::vector<double> data, int t)
    : pixels_(width, height, std::move(data)), t_(t) {
  validate();
}

Frame::Frame(Plane<double> pixels, int t) : pixels_(std::move(pixels)), t_(t) {
  validate();
}

Frame Frame::with_index(int t) const {
  Frame copy = *this;
  copy.t_ = t;
  copy.validate();
  return copy;
}

void Frame::validate() const {
  if (t_ < 0) throw DimensionError("frame index must be non-negative");
  const auto& v = pixels_.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0 || v[i] > 255.0) {
      throw FormatError("frame value at index " + std::to_string(i) +
                        " is outside [0, 255]");
    }
  }
}

Mask::Mask(int width, int height, std::uint8_t fill) : bits_(width, height, fill) {
  validate();
}

Mask::Mask(int width, int height, std::vector<std::uint8_t> bits)
    : bits_(width, height, std::move(bits)) {
  validate();
}

Mask::Mask(Plane<std::uint8_t> bits) : bits_(std::move(bits)) { validate(); }

std::size_t Mask::count() const {
  const auto& v = bits_.values();
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

void Mask::validate() const {
  for (auto b : bits_.values()) {
    if (b > 1) throw FormatError("mask bits must be 0 or 1");
  }
}

SampledFrame::SampledFrame(Frame frame, Mask mask)
    : frame_(std::move(frame)), mask_(std::move(mask)) {
  if (!frame_.pixels().same_shape(mask_.bits())) {
    throw DimensionError("sampled frame " + dims(frame_.width(), frame_.height()) +
                         " does not match mask " + dims(mask_.width(), mask_.height()));
  }
  // Unmeasured positions carry 0.
  const auto& bits = mask_.bits().values();
  const auto& vals = frame_.values();
  bool clean = true;
  for (std::size_t i = 0; i < bits.size() && clean; ++i) clean = bits[i] || vals[i] == 0.0;
  if (!clean) {
    std::vector<double> zeroed = vals;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (!bits[i]) zeroed[i] = 0.0;
    }
    frame_ = Frame(frame_.width(), frame_.height(), std::move(zeroed), frame_.t());
  }
}

std::vector<Position> SampledFrame::missing_positions() const {
  std::vector<Position> out;
  out.reserve(mask_.bits().size());
  for (int r = 0; r < height(); ++r) {
    for (int c = 0; c < width(); ++c) {
      if (!mask_(r, c)) out.push_back({r, c});
    }
  }
  return out;
}

}  // namespace qsv
