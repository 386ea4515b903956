#pragma once

#include <cmath>

namespace hmcf {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 v) { return dot(v, v); }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
// counter-clockwise quarter turn
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }
inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

// Row-major dense 2x2.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diagonal(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 outer(Vec2 a, Vec2 b) { return {a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y}; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}
inline Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}
inline Mat2 operator*(double s, const Mat2& a) {
  return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}
inline Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Vec2 operator*(const Mat2& a, Vec2 v) {
  return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}
inline Mat2 transpose(const Mat2& a) { return {a.a11, a.a21, a.a12, a.a22}; }
inline double trace(const Mat2& a) { return a.a11 + a.a22; }
inline Mat2 symmetrized(const Mat2& a) {
  const double off = 0.5 * (a.a12 + a.a21);
  return {a.a11, off, off, a.a22};
}
inline double max_abs(const Mat2& a) {
  return std::max(std::max(std::fabs(a.a11), std::fabs(a.a12)),
                  std::max(std::fabs(a.a21), std::fabs(a.a22)));
}

// Counter-clockwise rotation by `angle`.
inline Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

// Row-major dense symmetric 3x3 (stored fully).
struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
};

inline Mat3 symmetrized(const Mat3& a) {
  Mat3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s.m[i][j] = 0.5 * (a.m[i][j] + a.m[j][i]);
  return s;
}
inline Vec3 operator*(const Mat3& a, Vec3 v) {
  return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
          a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
          a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

// Eigendecomposition of a symmetric 2x2 matrix.
//
// lambda1 >= lambda2 and rot is a proper rotation (det +1) whose columns are
// the corresponding eigenvectors: rot^T M rot = diag(lambda1, lambda2).
// For a matrix that is already diagonal with a11 >= a22 the rotation is the
// identity; for a diagonal matrix with a11 < a22 it is the quarter turn.
struct SymEigen2 {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Mat2 rot = Mat2::identity();
};

inline SymEigen2 sym_eigen(const Mat2& m_in) {
  const Mat2 m = symmetrized(m_in);
  if (m.a12 == 0.0) {
    // exact for diagonal input; identity rotation when already sorted
    if (m.a11 >= m.a22) return {m.a11, m.a22, Mat2::identity()};
    return {m.a22, m.a11, Mat2{0.0, -1.0, 1.0, 0.0}};
  }
  const double half_tr = 0.5 * (m.a11 + m.a22);
  const double half_diff = 0.5 * (m.a11 - m.a22);
  const double disc = std::hypot(half_diff, m.a12);
  const double phi = 0.5 * std::atan2(2.0 * m.a12, m.a11 - m.a22);
  return {half_tr + disc, half_tr - disc, rotation(phi)};
}

}  // namespace hmcf
