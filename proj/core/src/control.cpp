#include "hmcf/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hmcf/optimizer.hpp"

namespace hmcf {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  if (a == 2.0 * kPi) a = 0.0;
  return a;
}
}  // namespace

ControlMatrix control_from_angle(double theta, double alpha) {
  const double c = std::cos(theta + alpha);
  const double s = std::sin(theta + alpha);
  return {{s * s, -s * c, -s * c, c * c}};
}

bool is_admissible(const Mat2& nu, double tol) {
  if (std::fabs(nu.a12 - nu.a21) > tol) return false;
  const SymEigen2 eig = sym_eigen(nu);
  if (eig.lambda2 < -tol) return false;                      // nu >= 0
  const double mu1 = eig.lambda1, mu2 = eig.lambda2;
  if (1.0 - mu1 * mu1 < -tol || 1.0 - mu2 * mu2 < -tol) return false;  // I - nu^2 >= 0
  return std::fabs(2.0 - (mu1 * mu1 + mu2 * mu2) - 1.0) <= tol;        // Tr(I - nu^2) = 1
}

Frame make_frame(double r, Vec2 q, Mat2 m, double char_tol) {
  if (!(r > 0.0)) throw PositivityError("make_frame: r must be > 0");
  Frame fr;
  fr.r = r;
  fr.q = q;
  fr.m = symmetrized(m);
  fr.characteristic = norm(q) <= char_tol;
  fr.alpha = fr.characteristic ? 0.0 : wrap_2pi(std::atan2(q.y, q.x));
  const SymEigen2 eig = sym_eigen(fr.m);
  fr.lambda1 = eig.lambda1;
  fr.lambda2 = eig.lambda2;
  fr.odiag = eig.rot;
  return fr;
}

Frame make_frame(const HorizontalJet& jet, double char_tol) {
  return make_frame(jet.r, jet.q, jet.m, char_tol);
}

Frame diagonalized(const Frame& fr) {
  Frame d;
  d.r = fr.r;
  d.q = transpose(fr.odiag) * fr.q;
  d.m = Mat2::diagonal(fr.lambda1, fr.lambda2);
  d.characteristic = fr.characteristic;
  d.alpha = d.characteristic ? 0.0 : wrap_2pi(std::atan2(d.q.y, d.q.x));
  d.lambda1 = fr.lambda1;
  d.lambda2 = fr.lambda2;
  d.odiag = Mat2::identity();
  return d;
}

double h_p(const Frame& fr, PParameter p, const Mat2& nu) {
  const Mat2 s = nu * transpose(nu);
  const double grad_term = dot(fr.q, s * fr.q);  // Tr(nu nu^T q q^T)
  const double hess_term = trace(s * fr.m);      // Tr(nu nu^T M)
  return -(p.value() - 1.0) / fr.r * grad_term + hess_term;
}

double fp_value(double p, double r, double q_norm, double alpha, double m11,
                double m22, double theta) {
  const double st = std::sin(theta);
  const double sa = std::sin(theta + alpha);
  const double ca = std::cos(theta + alpha);
  return -(p - 1.0) / r * q_norm * q_norm * st * st + m11 * sa * sa + m22 * ca * ca;
}

double f_p(const Frame& fr, PParameter p, double theta) {
  return fp_value(p.value(), fr.r, norm(fr.q), fr.alpha, fr.m.a11, fr.m.a22, theta);
}

double H_p(const Frame& fr, PParameter p, int resolution) {
  if (resolution < 8) throw std::invalid_argument("H_p: resolution must be >= 8");
  if (fr.characteristic) return std::max(fr.lambda1, fr.lambda2);

  const Frame d = diagonalized(fr);
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < resolution; ++k) {
    best = std::max(best, f_p(d, p, k * kPi / resolution));
  }
  const OptimalAngleResult st = optimal_angle_stationary(d, p);
  return std::max(best, st.value);
}

}  // namespace hmcf
