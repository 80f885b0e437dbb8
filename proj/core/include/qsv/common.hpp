#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsv {

// Error hierarchy. The CLI maps each family to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Position {
  int row = 0;
  int col = 0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Vec2 {
  int dy = 0;  // rows
  int dx = 0;  // columns

  friend bool operator==(const Vec2&, const Vec2&) = default;
  Vec2 operator-() const { return {-dy, -dx}; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.dy + b.dy, a.dx + b.dx}; }
};

inline Position operator+(Position p, Vec2 v) { return {p.row + v.dy, p.col + v.dx}; }

// Dense row-major 2D array.
template <class T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(checked_area(width, height), fill) {}
  Plane(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != checked_area(width, height)) {
      throw DimensionError("plane data length " + std::to_string(data_.size()) +
                           " does not match " + std::to_string(width) + "x" +
                           std::to_string(height));
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_;
  }
  bool contains(Position p) const { return contains(p.row, p.col); }

  T& operator()(int row, int col) { return data_[index(row, col)]; }
  const T& operator()(int row, int col) const { return data_[index(row, col)]; }
  T& operator[](Position p) { return (*this)(p.row, p.col); }
  const T& operator[](Position p) const { return (*this)(p.row, p.col); }

  const std::vector<T>& values() const { return data_; }
  std::vector<T>& values() { return data_; }

  bool same_shape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <class U>
  bool same_shape(const Plane<U>& other) const {
    return same_shape(other.width(), other.height());
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  static std::size_t checked_area(int width, int height) {
    if (width < 0 || height < 0) throw DimensionError("negative plane dimensions");
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

inline std::string dims(int width, int height) {
  return std::to_string(width) + "x" + std::to_string(height);
}

}  // namespace qsv
