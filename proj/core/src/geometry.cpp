#include "hmcf/geometry.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace hmcf {

namespace {

std::string describe(const Point3& x) {
  std::ostringstream os;
  os << "(" << x.x1 << ", " << x.x2 << ", " << x.x3 << ")";
  return os.str();
}

}  // namespace

ScalarField make_field(std::function<double(const Point3&)> value,
                       std::function<Vec3(const Point3&)> gradient,
                       std::function<Mat3(const Point3&)> hessian) {
  ScalarField f;
  f.value = std::move(value);
  f.gradient = std::move(gradient);
  f.hessian = [h = std::move(hessian)](const Point3& x) { return symmetrized(h(x)); };
  return f;
}

ScalarField make_field_fd(std::function<double(const Point3&)> value, double step) {
  const double h = step;
  auto at = [](const Point3& x, double d1, double d2, double d3) {
    return Point3{x.x1 + d1, x.x2 + d2, x.x3 + d3};
  };
  ScalarField f;
  f.value = value;
  f.gradient = [value, at, h](const Point3& x) -> Vec3 {
    return {(value(at(x, h, 0, 0)) - value(at(x, -h, 0, 0))) / (2 * h),
            (value(at(x, 0, h, 0)) - value(at(x, 0, -h, 0))) / (2 * h),
            (value(at(x, 0, 0, h)) - value(at(x, 0, 0, -h))) / (2 * h)};
  };
  f.hessian = [value, at, h](const Point3& x) -> Mat3 {
    Mat3 out;
    const double f0 = value(x);
    const double d[3][3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
    for (int i = 0; i < 3; ++i) {
      out.m[i][i] = (value(at(x, d[i][0], d[i][1], d[i][2])) - 2 * f0 +
                     value(at(x, -d[i][0], -d[i][1], -d[i][2]))) /
                    (h * h);
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double pp = value(at(x, d[i][0] + d[j][0], d[i][1] + d[j][1], d[i][2] + d[j][2]));
        const double pm = value(at(x, d[i][0] - d[j][0], d[i][1] - d[j][1], d[i][2] - d[j][2]));
        const double mp = value(at(x, d[j][0] - d[i][0], d[j][1] - d[i][1], d[j][2] - d[i][2]));
        const double mm = value(at(x, -d[i][0] - d[j][0], -d[i][1] - d[j][1], -d[i][2] - d[j][2]));
        out.m[i][j] = out.m[j][i] = (pp - pm - mp + mm) / (4 * h * h);
      }
    }
    return out;
  };
  return f;
}

ScalarField make_quadric_field(const Quadric& q) {
  const Mat3 quad = symmetrized(q.quad);
  const Vec3 lin = q.lin;
  const double c = q.constant;
  ScalarField f;
  f.value = [quad, lin, c](const Point3& p) {
    const Vec3 x = to_vec(p);
    return c + dot(lin, x) + dot(x, quad * x);
  };
  f.gradient = [quad, lin](const Point3& p) {
    const Vec3 x = to_vec(p);
    return lin + 2.0 * (quad * x);
  };
  f.hessian = [quad](const Point3&) {
    Mat3 h;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h.m[i][j] = 2.0 * quad.m[i][j];
    return h;
  };
  return f;
}

ScalarField unit_sphere_field() {
  Quadric q;
  q.quad.m[0][0] = q.quad.m[1][1] = q.quad.m[2][2] = 1.0;
  q.lin = {0.0, 0.0, -2.0};
  q.constant = 0.0;
  return make_quadric_field(q);
}

ScalarField ellipsoid_field() {
  Quadric q;
  q.quad.m[0][0] = 2.0;
  q.quad.m[1][1] = 1.0;
  q.quad.m[2][2] = 1.0;
  q.lin = {0.0, 0.0, -2.0};
  q.constant = 0.0;
  return make_quadric_field(q);
}

ScalarField plane_field(Vec3 normal, double offset) {
  Quadric q;
  q.lin = normal;
  q.constant = -offset;
  return make_quadric_field(q);
}

Vec2 horizontal_gradient(const ScalarField& u, const Point3& x) {
  return sigma(x).apply(u.gradient(x));
}

Mat2 horizontal_hessian_sym(const ScalarField& u, const Point3& x) {
  const Mat3 h = symmetrized(u.hessian(x));
  const SigmaMatrix s = sigma(x);
  const Vec3 r1 = s.row1(), r2 = s.row2();
  const Vec3 hr1 = h * r1, hr2 = h * r2;
  const double off = dot(r1, hr2);
  return {dot(r1, hr1), off, off, dot(r2, hr2)};
}

bool is_characteristic(const ScalarField& u, const Point3& x, double tol) {
  return norm(horizontal_gradient(u, x)) <= tol;
}

Vec2 horizontal_normal(const ScalarField& u, const Point3& x, double tol) {
  const Vec2 q = horizontal_gradient(u, x);
  if (norm(q) <= tol) {
    throw CharacteristicError("horizontal_normal: characteristic point at " + describe(x));
  }
  return normalized(q);
}

double horizontal_mean_curvature(const ScalarField& u, const Point3& x, double tol) {
  const Vec2 q = horizontal_gradient(u, x);
  const double nq = norm(q);
  if (nq <= tol) {
    throw CharacteristicError("horizontal_mean_curvature: characteristic point at " + describe(x));
  }
  const Mat2 m = horizontal_hessian_sym(u, x);
  const Vec2 qh = {q.x / nq, q.y / nq};
  return (trace(m) - dot(qh, m * qh)) / nq;
}

double levelset_rhs(const ScalarField& u, const Point3& x, double tol) {
  const Vec2 q = horizontal_gradient(u, x);
  const double nq = norm(q);
  if (nq <= tol) {
    throw CharacteristicError("levelset_rhs: characteristic point at " + describe(x));
  }
  const Mat2 m = horizontal_hessian_sym(u, x);
  const Vec2 qh = {q.x / nq, q.y / nq};
  return trace(m) - dot(qh, m * qh);
}

HorizontalJet horizontal_jet(const ScalarField& u, const Point3& x, double r_shift) {
  const double r = u.value(x) + r_shift;
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "horizontal_jet: r = u(x) + shift = " << r << " <= 0 at " << describe(x);
    throw PositivityError(os.str());
  }
  return {r, horizontal_gradient(u, x), horizontal_hessian_sym(u, x)};
}

}  // namespace hmcf
