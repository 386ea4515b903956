#include "hmcf/fields.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hmcf {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
  out.back() = hi;
  return out;
}

// Unit eigenvector of nu with the larger eigenvalue (the retained direction
// of a projection control).
Vec2 retained_direction(const Mat2& nu) {
  const SymEigen2 eig = sym_eigen(nu);
  return normalized({eig.rot.a11, eig.rot.a21});
}

SurfaceFieldSample sample_from_frame(const Point3& point, const Frame& fr,
                                     PParameter p) {
  SurfaceFieldSample s;
  s.point = point;
  s.frame = fr;
  s.characteristic = fr.characteristic;
  if (!fr.characteristic) s.horizontal_normal = normalized(fr.q);
  const auto [control, res] = optimal_control(fr, p, AngleMethod::kStationary);
  s.control_direction = retained_direction(control.nu);
  s.degenerate = res.degenerate;
  return s;
}

}  // namespace

LandscapeGrid fp_landscape(double alpha, PParameter p, double lambda1,
                           double lambda2, double r, double q_min, double q_max,
                           int q_count, double theta_min, double theta_max,
                           int theta_count) {
  if (!(r > 0.0)) throw PositivityError("fp_landscape: r must be > 0");
  if (q_count < 2 || theta_count < 2) {
    throw std::invalid_argument("fp_landscape: range counts must be >= 2");
  }
  LandscapeGrid grid;
  grid.theta_axis = linspace(theta_min, theta_max, theta_count);
  grid.q_axis = linspace(q_min, q_max, q_count);
  grid.values.resize(grid.q_axis.size());
  grid.argmax_index.resize(grid.q_axis.size());
  grid.argmax_branch.resize(grid.q_axis.size());
  for (std::size_t qi = 0; qi < grid.q_axis.size(); ++qi) {
    auto& row = grid.values[qi];
    row.resize(grid.theta_axis.size());
    std::size_t best = 0;
    for (std::size_t ti = 0; ti < grid.theta_axis.size(); ++ti) {
      row[ti] = fp_value(p.value(), r, grid.q_axis[qi], alpha, lambda1, lambda2,
                         grid.theta_axis[ti]);
      if (row[ti] > row[best]) best = ti;
    }
    grid.argmax_index[qi] = best;
    grid.argmax_branch[qi] = grid.theta_axis[best];
  }
  return grid;
}

Frame frame_at(const ScalarField& u, const Point3& x, double r_shift,
               double char_tol) {
  return make_frame(horizontal_jet(u, x, r_shift), char_tol);
}

std::vector<SurfaceFieldSample> sweep_surface(const ScalarField& u,
                                              std::span<const Point3> points,
                                              PParameter p, double r_shift,
                                              double char_tol) {
  std::vector<SurfaceFieldSample> out;
  out.reserve(points.size());
  for (const Point3& x : points) {
    const double v = u.value(x);
    if (std::fabs(v) > 1e-8) {
      std::ostringstream os;
      os << "sweep_surface: point (" << x.x1 << ", " << x.x2 << ", " << x.x3
         << ") is off-surface: u = " << v;
      throw OffSurfaceError(os.str());
    }
    out.push_back(sample_from_frame(x, frame_at(u, x, r_shift, char_tol), p));
  }
  return out;
}

ScalarField named_surface_field(NamedSurface kind) {
  return kind == NamedSurface::kSphereUnitC001 ? unit_sphere_field()
                                               : ellipsoid_field();
}

std::vector<Point3> surface_grid(NamedSurface kind, int n_lat, int n_lon) {
  if (n_lat < 4 || n_lon < 4) {
    throw std::invalid_argument("surface_grid: n_lat and n_lon must be >= 4");
  }
  // x = (a sin(phi) cos(psi), sin(phi) sin(psi), 1 + cos(phi)); poles once.
  const double a = kind == NamedSurface::kSphereUnitC001 ? 1.0 : 1.0 / std::sqrt(2.0);
  std::vector<Point3> out;
  out.reserve(2 + static_cast<std::size_t>(n_lat - 2) * static_cast<std::size_t>(n_lon));
  out.push_back({0.0, 0.0, 2.0});
  for (int i = 1; i + 1 < n_lat; ++i) {
    const double phi = kPi * i / (n_lat - 1);
    const double sp = std::sin(phi), cp = std::cos(phi);
    for (int j = 0; j < n_lon; ++j) {
      const double psi = 2.0 * kPi * j / n_lon;
      out.push_back({a * sp * std::cos(psi), sp * std::sin(psi), 1.0 + cp});
    }
  }
  out.push_back({0.0, 0.0, 0.0});
  return out;
}

std::vector<SurfaceFieldSample> control_field_qplane(
    PParameter p, double r, const Mat2& m, double q1_min, double q1_max, int n1,
    double q2_min, double q2_max, int n2, double char_tol) {
  if (n1 < 2 || n2 < 2) {
    throw std::invalid_argument("control_field_qplane: counts must be >= 2");
  }
  const std::vector<double> q1s = linspace(q1_min, q1_max, n1);
  const std::vector<double> q2s = linspace(q2_min, q2_max, n2);
  std::vector<SurfaceFieldSample> out;
  out.reserve(q1s.size() * q2s.size());
  for (double q1 : q1s) {
    for (double q2 : q2s) {
      const Frame fr = make_frame(r, {q1, q2}, m, char_tol);
      out.push_back(sample_from_frame({q1, q2, 0.0}, fr, p));
    }
  }
  return out;
}

Vec3 horizontal_lift(Vec2 h, const Point3& x) {
  return sigma(x).apply_transpose(h);
}

}  // namespace hmcf
