#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace dli {

//! Cartesian 3-vector in normalized units.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

//! Right-handed cross product a x b.
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const Vec3& a) {
  return std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)});
}
inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

//! 3x3 matrix, row-major: element (i, j) lives at data[3 * i + j].
struct Mat3 {
  std::array<double, 9> data{};

  constexpr double& operator()(std::size_t i, std::size_t j) { return data[3 * i + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return data[3 * i + j]; }

  constexpr Mat3 transposed() const {
    Mat3 t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.data[k] = a.data[k] + b.data[k];
  return r;
}

/*!
 * Skew matrix of B such that hat(B) * v == cross(v, B):
 *
 *     (  0   B3  -B2 )
 *     ( -B3  0    B1 )
 *     (  B2 -B1   0  )
 */
constexpr Mat3 hat(const Vec3& b) {
  Mat3 m;
  m(0, 1) = b.z;
  m(0, 2) = -b.y;
  m(1, 0) = -b.z;
  m(1, 2) = b.x;
  m(2, 0) = b.y;
  m(2, 1) = -b.x;
  return m;
}

//! Six-component phase-space vector: indices 0..2 position-like, 3..5 velocity-like.
class PhaseVec {
 public:
  constexpr PhaseVec() = default;
  constexpr PhaseVec(const Vec3& upper, const Vec3& lower)
      : data_{upper.x, upper.y, upper.z, lower.x, lower.y, lower.z} {}

  constexpr double& operator[](std::size_t i) { return data_[i]; }
  constexpr double operator[](std::size_t i) const { return data_[i]; }
  static constexpr std::size_t size() { return 6; }

  constexpr Vec3 position_block() const { return {data_[0], data_[1], data_[2]}; }
  constexpr Vec3 velocity_block() const { return {data_[3], data_[4], data_[5]}; }

  constexpr auto begin() const { return data_.begin(); }
  constexpr auto end() const { return data_.end(); }

  double norm_inf() const {
    double m = 0.0;
    for (double c : data_) m = std::max(m, std::abs(c));
    return m;
  }

  friend constexpr bool operator==(const PhaseVec&, const PhaseVec&) = default;

 private:
  std::array<double, 6> data_{};
};

constexpr double dot(const PhaseVec& a, const PhaseVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 6; ++i) s += a[i] * b[i];
  return s;
}

constexpr PhaseVec operator-(const PhaseVec& a, const PhaseVec& b) {
  PhaseVec r;
  for (std::size_t i = 0; i < 6; ++i) r[i] = a[i] - b[i];
  return r;
}

}  // namespace dli
