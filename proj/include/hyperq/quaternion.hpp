#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "hyperq/errors.hpp"

namespace hyperq {

/**
 * @brief Real quaternion in the basis order (1, i, j, k).
 *
 * Multiplication follows the Hamilton convention i*j = k, matching the
 * canonical structure-tensor matrices used throughout the library. The
 * matching of this hand-written product against the tensor contraction is a
 * test-suite invariant.
 */
struct Quaternion {
  double w = 0.0;  ///< real component
  double x = 0.0;  ///< i component
  double y = 0.0;  ///< j component
  double z = 0.0;  ///< k component

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  /// Basis element by index: 0 -> 1, 1 -> i, 2 -> j, 3 -> k.
  [[nodiscard]] static constexpr Quaternion unit(int beta) {
    switch (beta) {
      case 0: return {1.0, 0.0, 0.0, 0.0};
      case 1: return {0.0, 1.0, 0.0, 0.0};
      case 2: return {0.0, 0.0, 1.0, 0.0};
      default: return {0.0, 0.0, 0.0, 1.0};
    }
  }

  [[nodiscard]] constexpr double operator[](int beta) const {
    return beta == 0 ? w : beta == 1 ? x : beta == 2 ? y : z;
  }

  [[nodiscard]] constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }

  /// Squared euclidean norm; equals the real part of q * conjugate(q).
  [[nodiscard]] constexpr double norm2() const { return w * w + x * x + y * y + z * z; }

  [[nodiscard]] double norm() const { return std::sqrt(norm2()); }

  /// Multiplicative inverse conjugate(q) / |q|^2.
  /// @throws NumericError for the zero quaternion.
  [[nodiscard]] Quaternion inverse() const {
    const double n2 = norm2();
    if (n2 == 0.0) throw NumericError("inverse of the zero quaternion");
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  [[nodiscard]] constexpr bool is_zero() const {
    return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0;
  }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) {
    return {-a.w, -a.x, -a.y, -a.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) {
    return {a.w * s, a.x * s, a.y * s, a.z * s};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) { return a * s; }
  friend constexpr Quaternion operator/(const Quaternion& a, double s) {
    return {a.w / s, a.x / s, a.y / s, a.z / s};
  }

  /// Quaternion product, Hamilton convention (i*j = k, j*i = -k).
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }

  friend constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
  }
};

/// Componentwise max-norm distance, used by approximate comparisons in tests.
[[nodiscard]] inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  double m = std::fabs(a.w - b.w);
  m = std::fmax(m, std::fabs(a.x - b.x));
  m = std::fmax(m, std::fabs(a.y - b.y));
  return std::fmax(m, std::fabs(a.z - b.z));
}

}  // namespace hyperq
