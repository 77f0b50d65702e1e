#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace sewkit {

/// Fixed-capacity coordinate vector. Probe evaluation composes millions of
/// maps per sewing level, so points never touch the heap.
class Point {
 public:
  static constexpr std::size_t max_dim = 8;

  Point() = default;

  explicit Point(std::size_t dim) : dim_(check_dim(dim)) {}

  Point(std::initializer_list<double> coords) : dim_(check_dim(coords.size())) {
    std::size_t i = 0;
    for (double c : coords) data_[i++] = c;
  }

  explicit Point(std::span<const double> coords) : dim_(check_dim(coords.size())) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] = coords[i];
  }

  static Point zeros(std::size_t dim) { return Point(dim); }

  static Point filled(std::size_t dim, double value) {
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p.data_[i] = value;
    return p;
  }

  std::size_t dim() const { return dim_; }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> coords() { return {data_.data(), dim_}; }
  std::span<const double> coords() const { return {data_.data(), dim_}; }

  Point& operator+=(const Point& o) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Point& operator*=(double a) {
    for (std::size_t i = 0; i < dim_; ++i) data_[i] *= a;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double a, Point p) { return p *= a; }
  friend Point operator*(Point p, double a) { return p *= a; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
      if (a.data_[i] != b.data_[i]) return false;
    return true;
  }

 private:
  static std::size_t check_dim(std::size_t dim) {
    if (dim > max_dim) throw std::invalid_argument("Point: dimension exceeds capacity");
    return dim;
  }

  std::array<double, max_dim> data_{};
  std::size_t dim_ = 0;
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline double euclidean_distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Planar cross product; both points must be two-dimensional.
inline double cross2(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }

/// (1-w) a + w b, coordinatewise.
inline Point lerp(const Point& a, const Point& b, double w) {
  Point r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = (1.0 - w) * a[i] + w * b[i];
  return r;
}

/// Euclidean distance from the origin to the closed segment [a, b].
inline double segment_origin_distance(const Point& a, const Point& b) {
  const Point d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return norm(a);
  double w = -dot(a, d) / len2;
  if (w < 0.0) w = 0.0;
  if (w > 1.0) w = 1.0;
  return norm(a + w * d);
}

}  // namespace sewkit
