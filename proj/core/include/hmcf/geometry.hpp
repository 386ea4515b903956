#pragma once

#include <functional>

#include "hmcf/errors.hpp"
#include "hmcf/linalg.hpp"

namespace hmcf {

// Default absolute tolerance on |D_X u| below which a point counts as
// characteristic.
inline constexpr double kCharacteristicTol = 1e-10;

struct Point3 {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

inline Vec3 to_vec(const Point3& p) { return {p.x1, p.x2, p.x3}; }

// Frame matrix of the Heisenberg vector fields
//   X1 = (1, 0, -x2/2),  X2 = (0, 1, x1/2),
// as the 2x3 matrix sigma with X_i as rows. Only its actions are needed.
struct SigmaMatrix {
  double x1 = 0.0;
  double x2 = 0.0;

  // sigma(x) * v for v in R^3
  Vec2 apply(Vec3 v) const {
    return {v.x - 0.5 * x2 * v.z, v.y + 0.5 * x1 * v.z};
  }
  // sigma(x)^T * w for w in R^2
  Vec3 apply_transpose(Vec2 w) const {
    return {w.x, w.y, 0.5 * (x1 * w.y - x2 * w.x)};
  }
  Vec3 row1() const { return {1.0, 0.0, -0.5 * x2}; }
  Vec3 row2() const { return {0.0, 1.0, 0.5 * x1}; }
};

inline SigmaMatrix sigma(const Point3& x) { return {x.x1, x.x2}; }

// A scalar function of R^3 together with its Euclidean derivatives.
// The hessian callback is expected to return a symmetric matrix; factory
// functions below symmetrize whatever the callback produces.
struct ScalarField {
  std::function<double(const Point3&)> value;
  std::function<Vec3(const Point3&)> gradient;
  std::function<Mat3(const Point3&)> hessian;
};

ScalarField make_field(std::function<double(const Point3&)> value,
                       std::function<Vec3(const Point3&)> gradient,
                       std::function<Mat3(const Point3&)> hessian);

// Wraps a value-only function with central finite differences.
ScalarField make_field_fd(std::function<double(const Point3&)> value,
                          double step = 1e-5);

// c + <l, x> + <x, Q x> with Q symmetric.
struct Quadric {
  Mat3 quad;
  Vec3 lin;
  double constant = 0.0;
};

ScalarField make_quadric_field(const Quadric& q);

// x1^2 + x2^2 + (x3-1)^2 - 1: the unit sphere centred at (0,0,1).
ScalarField unit_sphere_field();
// 2 x1^2 + x2^2 + (x3-1)^2 - 1.
ScalarField ellipsoid_field();
// <n, x> - offset.
ScalarField plane_field(Vec3 normal, double offset);

// (X1 u, X2 u) = sigma(x) grad u(x)
Vec2 horizontal_gradient(const ScalarField& u, const Point3& x);

// Symmetrized horizontal Hessian ((X_i X_j u + X_j X_i u)/2); the
// first-order parts of the vector fields cancel under symmetrization, so
// this equals sigma(x) Hess(u)(x) sigma(x)^T.
Mat2 horizontal_hessian_sym(const ScalarField& u, const Point3& x);

bool is_characteristic(const ScalarField& u, const Point3& x,
                       double tol = kCharacteristicTol);

// q/|q|. Throws CharacteristicError when |q| <= tol.
Vec2 horizontal_normal(const ScalarField& u, const Point3& x,
                       double tol = kCharacteristicTol);

// Horizontal divergence of the horizontal normal,
// (Tr M - <M qh, qh>)/|q|. Throws CharacteristicError when |q| <= tol.
double horizontal_mean_curvature(const ScalarField& u, const Point3& x,
                                 double tol = kCharacteristicTol);

// Tr M - <M qh, qh>, the curvature-flow level-set right-hand side.
// Throws CharacteristicError when |q| <= tol.
double levelset_rhs(const ScalarField& u, const Point3& x,
                    double tol = kCharacteristicTol);

// Local optimization data at a point: r = u(x) + r_shift must be positive.
struct HorizontalJet {
  double r = 0.0;
  Vec2 q;
  Mat2 m;
};

// Throws PositivityError when u(x) + r_shift <= 0.
HorizontalJet horizontal_jet(const ScalarField& u, const Point3& x,
                             double r_shift);

}  // namespace hmcf
