#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hmcf/optimizer.hpp"

namespace hmcf {

// Tabulation of f_p over (|q|, theta) with the per-|q| maximizing angle.
struct LandscapeGrid {
  std::vector<double> theta_axis;
  std::vector<double> q_axis;                 // |q| values
  std::vector<std::vector<double>> values;    // values[qi][ti]
  std::vector<std::size_t> argmax_index;      // per-|q| maximizing theta index
  std::vector<double> argmax_branch;          // theta_axis[argmax_index[qi]]
};

// Tabulates f_p for frames (r, |q| e_alpha, diag(lambda1, lambda2)) over the
// inclusive ranges [q_min, q_max] x [theta_min, theta_max]. Requires r > 0
// and both counts >= 2.
LandscapeGrid fp_landscape(double alpha, PParameter p, double lambda1,
                           double lambda2, double r, double q_min, double q_max,
                           int q_count, double theta_min, double theta_max,
                           int theta_count);

// Per-point data of a control-field sweep: the horizontal normal where
// defined and the retained direction of the optimal control (its
// unit eigenvector with eigenvalue 1).
struct SurfaceFieldSample {
  Point3 point;
  std::optional<Vec2> horizontal_normal;  // absent iff characteristic
  Vec2 control_direction;
  bool characteristic = false;
  bool degenerate = false;
  Frame frame;
};

// Binds the horizontal jet of u at x to an optimization frame with
// r = u(x) + r_shift. Throws PositivityError when r <= 0.
Frame frame_at(const ScalarField& u, const Point3& x, double r_shift,
               double char_tol = kCharacteristicTol);

// Sweeps the optimal control field over on-surface points (|u(x)| <= 1e-8,
// otherwise OffSurfaceError).
std::vector<SurfaceFieldSample> sweep_surface(const ScalarField& u,
                                              std::span<const Point3> points,
                                              PParameter p, double r_shift,
                                              double char_tol = kCharacteristicTol);

enum class NamedSurface { kSphereUnitC001, kEllipsoid2X2Y2Z2 };

ScalarField named_surface_field(NamedSurface kind);

// Latitude-longitude sample of the named surface, poles included once.
// Requires n_lat, n_lon >= 4; every point satisfies |u(x)| <= 1e-12.
std::vector<Point3> surface_grid(NamedSurface kind, int n_lat, int n_lon);

// Optimal-control directions over a grid of gradient vectors q at fixed
// (r, m): the parameter-plane analogue of a surface sweep, with
// point = (q1, q2, 0).
std::vector<SurfaceFieldSample> control_field_qplane(
    PParameter p, double r, const Mat2& m, double q1_min, double q1_max,
    int n1, double q2_min, double q2_max, int n2,
    double char_tol = kCharacteristicTol);

// h1 X1(x) + h2 X2(x): the horizontal lift of an R^2 direction.
Vec3 horizontal_lift(Vec2 h, const Point3& x);

}  // namespace hmcf
