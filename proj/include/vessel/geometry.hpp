#pragma once

#include <cmath>

namespace vessel {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(const Vec3& a, double s) {
    return {a.x * s, a.y * s, a.z * s};
  }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm_squared(const Vec3& v) { return dot(v, v); }

inline double norm(const Vec3& v) { return std::sqrt(norm_squared(v)); }

inline double distance(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return n > 0.0 ? Vec3{v.x / n, v.y / n, v.z / n} : Vec3{};
}

// Axis-aligned box with the origin corner at `min`. A flat box
// (min.z == max.z) denotes a 2D domain; z stays 0 on one code path
// shared by 2D and 3D data.
struct BoundingBox {
  Vec3 min{};
  Vec3 max{};

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double depth() const { return max.z - min.z; }
  bool is_2d() const { return depth() <= 0.0; }
};

}  // namespace vessel
