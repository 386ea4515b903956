#include "hmcf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace hmcf {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double th) {
  th = std::fmod(th, kPi);
  if (th < 0.0) th += kPi;
  if (th == kPi) th = 0.0;
  return th;
}

// Golden-section maximization on [lo, hi]; f unimodal there.
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// One symmetric three-point parabolic vertex step around th. Golden section
// alone bottoms out near sqrt(eps) once f comparisons go noise-limited; the
// parabola through exact f samples at spacing h recovers the vertex to
// ~eps/h. Returns th unchanged when the local curvature is not clearly
// negative or the correction is out of range.
template <class F>
double parabolic_polish(F&& f, double th, double h) {
  const double fm = f(th - h);
  const double f0 = f(th);
  const double fp = f(th + h);
  const double scale = std::max({std::fabs(fm), std::fabs(f0), std::fabs(fp), 1.0});
  const double denom = fm - 2.0 * f0 + fp;
  if (!(denom < -1e-10 * scale)) return th;
  const double d = 0.5 * h * (fm - fp) / denom;
  if (!(std::fabs(d) <= h)) return th;
  return th + d;
}

struct StationaryRoots {
  double a = 0.0;
  double b = 0.0;
  bool flat = false;  // f_p constant in theta
};

// f_p'(theta) = -(p-1) r^-1 |q|^2 sin 2theta + (m11 - m22) sin(2theta + 2alpha) = 0
StationaryRoots stationary_roots(const Frame& fr, PParameter p) {
  const double coeff = (p.value() - 1.0) / fr.r * norm_sq(fr.q);
  const double dl = fr.m.a11 - fr.m.a22;
  const double num = dl * std::sin(2.0 * fr.alpha);
  const double den = coeff - dl * std::cos(2.0 * fr.alpha);
  StationaryRoots roots;
  const double scale = std::fabs(coeff) + std::fabs(dl);
  roots.flat = std::fabs(num) <= 1e-15 * scale && std::fabs(den) <= 1e-15 * scale;
  roots.a = wrap_pi(0.5 * std::atan2(num, den));
  roots.b = wrap_pi(roots.a + 0.5 * kPi);
  return roots;
}

}  // namespace

double angle_dist_mod_pi(double a, double b) {
  double d = std::fabs(wrap_pi(a) - wrap_pi(b));
  return std::min(d, kPi - d);
}

double signed_angle_mod_pi(double theta) {
  double t = wrap_pi(theta);
  return t > 0.5 * kPi ? t - kPi : t;
}

OptimalAngleResult optimal_angle_grid(const Frame& fr, PParameter p, int n) {
  if (n < 64) throw std::invalid_argument("optimal_angle_grid: n must be >= 64");
  auto f = [&](double th) { return f_p(fr, p, th); };

  double max_v = -std::numeric_limits<double>::infinity();
  double min_v = std::numeric_limits<double>::infinity();
  int k_max = 0;
  for (int k = 0; k < n; ++k) {
    const double v = f(k * kPi / n);
    if (v > max_v) {
      max_v = v;
      k_max = k;
    }
    min_v = std::min(min_v, v);
  }

  OptimalAngleResult res;
  res.method = AngleMethod::kGrid;
  if (max_v - min_v <= 1e-12 * (1.0 + std::fabs(max_v))) {
    res.degenerate = true;
    res.theta_star = 0.0;
    res.value = f(0.0);
    return res;
  }

  const double h = kPi / n;
  double th = golden_max(f, (k_max - 1) * h, (k_max + 1) * h, 1e-12);
  // Noise in the vertex estimate scales like 1/h and truncation like
  // (th - th*) h^2, so polish with a small spacing first and a larger one
  // once the residual is tiny.
  th = parabolic_polish(f, th, 1e-4);
  th = parabolic_polish(f, th, 1e-2);
  th = wrap_pi(th);
  // a refined angle within noise of pi is the same control as one at 0
  if (kPi - th <= 1e-9) th = 0.0;
  res.theta_star = th;
  res.value = f(res.theta_star);
  return res;
}

OptimalAngleResult optimal_angle_stationary(const Frame& fr, PParameter p) {
  if (fr.characteristic) {
    throw CharacteristicError("optimal_angle_stationary: q = 0 has no stationary form");
  }
  const StationaryRoots roots = stationary_roots(fr, p);
  const double fa = f_p(fr, p, roots.a);
  const double fb = f_p(fr, p, roots.b);

  OptimalAngleResult res;
  res.method = AngleMethod::kStationary;
  res.degenerate = roots.flat;
  if (fa > fb) {
    res.theta_star = roots.a;
    res.value = fa;
  } else if (fb > fa) {
    res.theta_star = roots.b;
    res.value = fb;
  } else {
    res.theta_star = std::min(roots.a, roots.b);
    res.value = fa;
  }
  return res;
}

OptimalAngleResult optimal_angle_asymptotic(const Frame& fr, PParameter p) {
  if (fr.characteristic) {
    throw CharacteristicError("optimal_angle_asymptotic: q = 0 has no asymptotic form");
  }
  const double dl = fr.m.a11 - fr.m.a22;
  AsymptoticConstants c;
  c.c1 = dl * std::sin(2.0 * fr.alpha);
  c.c2 = 2.0 * norm_sq(fr.q) / fr.r;
  c.cbar = c.c1 / c.c2;

  OptimalAngleResult res;
  res.method = AngleMethod::kAsymptotic;
  res.theta_star = wrap_pi(c.cbar / p.value());
  res.value = f_p(fr, p, res.theta_star);
  res.regime_warning = p.value() * norm_sq(fr.q) <= dl;
  res.constants = c;
  return res;
}

std::pair<ControlMatrix, OptimalAngleResult> optimal_control(const Frame& fr,
                                                             PParameter p,
                                                             AngleMethod method,
                                                             int grid_n) {
  if (fr.characteristic) {
    // Projection onto the maximal-eigenvalue eigenspace: I - e_min (x) e_min.
    const Vec2 e_min = {fr.odiag.a12, fr.odiag.a22};
    OptimalAngleResult res;
    res.method = AngleMethod::kCharacteristic;
    res.theta_star = 0.5 * kPi;
    res.value = fr.lambda1;
    res.degenerate =
        std::fabs(fr.lambda1 - fr.lambda2) <=
        1e-12 * (1.0 + std::fabs(fr.lambda1) + std::fabs(fr.lambda2));
    ControlMatrix nu{Mat2::identity() - Mat2::outer(e_min, e_min)};
    return {nu, res};
  }

  const Frame d = diagonalized(fr);
  OptimalAngleResult res;
  switch (method) {
    case AngleMethod::kGrid:
      res = optimal_angle_grid(d, p, grid_n);
      break;
    case AngleMethod::kAsymptotic:
      res = optimal_angle_asymptotic(d, p);
      break;
    case AngleMethod::kStationary:
    case AngleMethod::kCharacteristic:
      res = optimal_angle_stationary(d, p);
      break;
  }
  const ControlMatrix in_eigenbasis = control_from_angle(res.theta_star, d.alpha);
  ControlMatrix nu{symmetrized(fr.odiag * in_eigenbasis.nu * transpose(fr.odiag))};
  return {nu, res};
}

std::optional<double> switch_locus(PParameter p, double r, double lambda1,
                                   double lambda2, int grid_n) {
  if (!(r > 0.0)) throw PositivityError("switch_locus: r must be > 0");
  const Mat2 m = Mat2::diagonal(lambda1, lambda2);
  // Argmax near pi/2 classifies as the small-|q| branch.
  auto upper_branch = [&](double q_sq) {
    const Frame fr = make_frame(r, {std::sqrt(q_sq), 0.0}, m);
    const OptimalAngleResult res = optimal_angle_grid(fr, p, grid_n);
    return !res.degenerate && res.theta_star > 0.25 * kPi && res.theta_star < 0.75 * kPi;
  };

  const double scale = std::max(1.0, std::fabs(lambda1 - lambda2)) * r / (p.value() - 1.0);
  double lo = 1e-9 * scale;
  double hi = 1e3 * scale;
  if (!upper_branch(lo) || upper_branch(hi)) return std::nullopt;
  while ((hi - lo) > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (upper_branch(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace hmcf
