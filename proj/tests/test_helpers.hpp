#pragma once

#include <cmath>
#include <random>

#include "hmcf/control.hpp"
#include "hmcf/geometry.hpp"

namespace hmcf::testing {

// Exact flows of the Heisenberg vector fields, used by the oracles below.
inline Point3 flow_x1(double s, const Point3& x) {
  return {x.x1 + s, x.x2, x.x3 - 0.5 * x.x2 * s};
}
inline Point3 flow_x2(double s, const Point3& x) {
  return {x.x1, x.x2 + s, x.x3 + 0.5 * x.x1 * s};
}

inline Point3 shift_along(const Point3& x, Vec3 dir, double t) {
  return {x.x1 + t * dir.x, x.x2 + t * dir.y, x.x3 + t * dir.z};
}

// Central difference of t -> f(x + t X_i(x)); equals (X_i f)(x) in the limit.
template <class F>
double directional_derivative_fd(F&& f, const Point3& x, Vec3 dir, double h) {
  return (f(shift_along(x, dir, h)) - f(shift_along(x, dir, -h))) / (2.0 * h);
}

// FD oracle for the horizontal gradient.
inline Vec2 horizontal_gradient_fd(const ScalarField& u, const Point3& x,
                                   double h = 1e-5) {
  const SigmaMatrix s = sigma(x);
  auto val = [&](const Point3& y) { return u.value(y); };
  return {directional_derivative_fd(val, x, s.row1(), h),
          directional_derivative_fd(val, x, s.row2(), h)};
}

// FD oracle for X_i(X_j u) via mixed differences of u along the exact flows:
// phi(s, t) = u(F_j(t, F_i(s, x))), d^2 phi / ds dt at the origin.
inline double second_flow_derivative_fd(const ScalarField& u, const Point3& x,
                                        int i, int j, double h) {
  auto flow = [&](int k, double s, const Point3& y) {
    return k == 1 ? flow_x1(s, y) : flow_x2(s, y);
  };
  auto phi = [&](double s, double t) { return u.value(flow(j, t, flow(i, s, x))); };
  return (phi(h, h) - phi(h, -h) - phi(-h, h) + phi(-h, -h)) / (4.0 * h * h);
}

inline Mat2 horizontal_hessian_fd(const ScalarField& u, const Point3& x,
                                  double h = 1e-4) {
  const double m11 = second_flow_derivative_fd(u, x, 1, 1, h);
  const double m22 = second_flow_derivative_fd(u, x, 2, 2, h);
  const double m12 = 0.5 * (second_flow_derivative_fd(u, x, 1, 2, h) +
                            second_flow_derivative_fd(u, x, 2, 1, h));
  return {m11, m12, m12, m22};
}

// FD oracle for the horizontal mean curvature: divergence of the horizontal
// normal along the vector fields, straight from the defining formula.
inline double horizontal_mean_curvature_fd(const ScalarField& u, const Point3& x,
                                           double h = 1e-6) {
  const SigmaMatrix s = sigma(x);
  auto normal_component = [&](int i) {
    return [&u, i](const Point3& y) {
      const Vec2 q = sigma(y).apply(u.gradient(y));
      const double nq = std::hypot(q.x, q.y);
      return (i == 1 ? q.x : q.y) / nq;
    };
  };
  return directional_derivative_fd(normal_component(1), x, s.row1(), h) +
         directional_derivative_fd(normal_component(2), x, s.row2(), h);
}

// [X1, X2](x) estimated by composing flows: the displacement of
// F2(-t) o F1(-t) o F2(t) o F1(t) scales like t^2 [X1, X2].
inline Vec3 commutator_fd(const Point3& x, double t) {
  const Point3 y = flow_x2(-t, flow_x1(-t, flow_x2(t, flow_x1(t, x))));
  return {(y.x1 - x.x1) / (t * t), (y.x2 - x.x2) / (t * t), (y.x3 - x.x3) / (t * t)};
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Point3 point(double lo = -2.0, double hi = 2.0) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }
  Vec2 vec2(double lo = -2.0, double hi = 2.0) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Mat2 sym2(double lo = -2.0, double hi = 2.0) {
    const double off = uniform(lo, hi);
    return {uniform(lo, hi), off, off, uniform(lo, hi)};
  }
  // Random member of the admissible set via its eigenvalue characterization:
  // nu = mu1 e (x) e + mu2 e-perp (x) e-perp with mu = (cos t, sin t), t in [0, pi/2].
  Mat2 admissible(double* mu1_out = nullptr) {
    const double t = uniform(0.0, 0.5 * 3.14159265358979323846);
    const double mu1 = std::cos(t), mu2 = std::sin(t);
    const Mat2 rot = rotation(uniform(0.0, 2.0 * 3.14159265358979323846));
    const Vec2 e{rot.a11, rot.a21};
    const Vec2 ep{rot.a12, rot.a22};
    if (mu1_out) *mu1_out = mu1;
    return mu1 * Mat2::outer(e, e) + mu2 * Mat2::outer(ep, ep);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// A non-quadric smooth field with analytic derivatives, for FD cross-checks:
// u = x1^3 + x3 x2^2 + c x1 x2 x3 + quadric-style lower order terms.
inline ScalarField cubic_test_field(double c) {
  auto value = [c](const Point3& p) {
    return p.x1 * p.x1 * p.x1 + p.x3 * p.x2 * p.x2 + c * p.x1 * p.x2 * p.x3 +
           0.5 * p.x1 * p.x2 - p.x3 + 2.0;
  };
  auto gradient = [c](const Point3& p) -> Vec3 {
    return {3.0 * p.x1 * p.x1 + c * p.x2 * p.x3 + 0.5 * p.x2,
            2.0 * p.x3 * p.x2 + c * p.x1 * p.x3 + 0.5 * p.x1,
            p.x2 * p.x2 + c * p.x1 * p.x2 - 1.0};
  };
  auto hessian = [c](const Point3& p) -> Mat3 {
    Mat3 h;
    h.m[0][0] = 6.0 * p.x1;
    h.m[0][1] = h.m[1][0] = c * p.x3 + 0.5;
    h.m[0][2] = h.m[2][0] = c * p.x2;
    h.m[1][1] = 2.0 * p.x3;
    h.m[1][2] = h.m[2][1] = 2.0 * p.x2 + c * p.x1;
    h.m[2][2] = 0.0;
    return h;
  };
  return make_field(value, gradient, hessian);
}

inline ScalarField random_quadric_field(Rng& rng) {
  Quadric q;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) q.quad.m[i][j] = q.quad.m[j][i] = rng.uniform(-1.5, 1.5);
  }
  q.lin = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
  q.constant = rng.uniform(-1, 1);
  return make_quadric_field(q);
}

}  // namespace hmcf::testing
