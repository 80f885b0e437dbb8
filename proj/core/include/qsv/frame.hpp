#pragma once

#include <cstdint>
#include <vector>

#include "qsv/common.hpp"

namespace qsv {

/// Grayscale frame on the full-resolution grid. Values are real-valued luma
/// in [0, 255]; quantization happens only when written to disk.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, int t = 0);
  Frame(int width, int height, std::vector<double> data, int t = 0);
  explicit Frame(Plane<double> pixels, int t = 0);

  int width() const { return pixels_.width(); }
  int height() const { return pixels_.height(); }
  int t() const { return t_; }
  Frame with_index(int t) const;

  double operator()(int row, int col) const { return pixels_(row, col); }
  double operator[](Position p) const { return pixels_[p]; }
  bool contains(Position p) const { return pixels_.contains(p); }

  const Plane<double>& pixels() const { return pixels_; }
  const std::vector<double>& values() const { return pixels_.values(); }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  void validate() const;

  Plane<double> pixels_;
  int t_ = 0;
};

/// Binary measurement indicator; 1 = pixel is read out by the sensor.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, std::uint8_t fill = 0);
  Mask(int width, int height, std::vector<std::uint8_t> bits);
  explicit Mask(Plane<std::uint8_t> bits);

  int width() const { return bits_.width(); }
  int height() const { return bits_.height(); }

  bool operator()(int row, int col) const { return bits_(row, col) != 0; }
  bool operator[](Position p) const { return bits_[p] != 0; }
  void set(int row, int col, bool on) { bits_(row, col) = on ? 1 : 0; }

  std::size_t count() const;
  const Plane<std::uint8_t>& bits() const { return bits_; }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  void validate() const;

  Plane<std::uint8_t> bits_;
};

/// Sensor output: frame values are only meaningful where the mask is set and
/// are stored as 0 elsewhere.
class SampledFrame {
 public:
  SampledFrame() = default;
  SampledFrame(Frame frame, Mask mask);

  const Frame& frame() const { return frame_; }
  const Mask& mask() const { return mask_; }
  int width() const { return frame_.width(); }
  int height() const { return frame_.height(); }
  int t() const { return frame_.t(); }

  bool measured(Position p) const { return mask_[p]; }
  double value(Position p) const { return frame_[p]; }

  std::vector<Position> missing_positions() const;

 private:
  Frame frame_;
  Mask mask_;
};

}  // namespace qsv
