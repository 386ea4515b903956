#pragma once

#include <optional>
#include <utility>

#include "hmcf/control.hpp"

namespace hmcf {

enum class AngleMethod { kGrid, kStationary, kAsymptotic, kCharacteristic };

struct AsymptoticConstants {
  double c1 = 0.0;   // (lambda1 - lambda2) sin(2 alpha)
  double c2 = 0.0;   // 2 r^-1 |q|^2
  double cbar = 0.0; // c1 / c2
};

struct OptimalAngleResult {
  double theta_star = 0.0;  // in [0, pi)
  double value = 0.0;       // f_p at theta_star
  AngleMethod method = AngleMethod::kGrid;
  bool degenerate = false;      // every theta optimal
  bool regime_warning = false;  // p |q|^2 <= lambda1 - lambda2 (asymptotics invalid)
  std::optional<AsymptoticConstants> constants;
};

// Brute-force oracle: evaluates f_p on theta_k = k pi / n, k = 0..n-1,
// then refines the bracketing interval by golden-section search to 1e-12
// and a guarded three-point parabolic polish. Requires n >= 64 and a
// diagonal-m frame. Degenerate when max - min over the grid is below
// 1e-12 (1 + |max|).
OptimalAngleResult optimal_angle_grid(const Frame& fr, PParameter p, int n = 1024);

// Exact stationary solve of f_p'(theta) = 0 via
//   tan 2theta = (m11 - m22) sin 2a / ((p-1) r^-1 |q|^2 - (m11 - m22) cos 2a),
// picking the maximizing root of the two in [0, pi). Requires a diagonal-m
// frame with q != 0 (throws CharacteristicError otherwise).
OptimalAngleResult optimal_angle_stationary(const Frame& fr, PParameter p);

// Large-p expansion theta* = Cbar / p with Cbar = C1 / C2,
// C1 = (lambda1 - lambda2) sin 2a, C2 = 2 r^-1 |q|^2. Requires q != 0.
// Sets regime_warning when p |q|^2 <= lambda1 - lambda2.
OptimalAngleResult optimal_angle_asymptotic(const Frame& fr, PParameter p);

// Optimal control for a general frame.
//
// q != 0: diagonalize m, solve for theta* in the eigenbasis (alpha measured
// against the rotated q), build nu_theta* there and conjugate back by odiag.
// q = 0: projection onto the maximal-eigenvalue eigenspace
// (nu = I - e_min (x) e_min); degenerate when lambda1 = lambda2 within
// 1e-12 (1 + |lambda1| + |lambda2|).
std::pair<ControlMatrix, OptimalAngleResult> optimal_control(
    const Frame& fr, PParameter p, AngleMethod method = AngleMethod::kStationary,
    int grid_n = 1024);

// Critical |q|^2 at which the grid-oracle argmax jumps between pi/2 and 0
// on the alpha = 0 slice with m = diag(lambda1, lambda2), located by
// bisection to relative 1e-9. Empty when no jump exists in the bracket
// (lambda1 <= lambda2). Analytically (p-1) r^-1 |q|^2_crit = lambda1 - lambda2.
std::optional<double> switch_locus(PParameter p, double r, double lambda1,
                                   double lambda2, int grid_n = 512);

// Distance between two angles modulo pi.
double angle_dist_mod_pi(double a, double b);

// Representative of theta modulo pi in (-pi/2, pi/2].
double signed_angle_mod_pi(double theta);

}  // namespace hmcf
