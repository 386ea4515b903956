#pragma once

#include "hmcf/errors.hpp"
#include "hmcf/geometry.hpp"
#include "hmcf/linalg.hpp"

namespace hmcf {

// Regularization exponent, required > 1.
class PParameter {
 public:
  explicit PParameter(double p) : p_(p) {
    if (!(p > 1.0)) throw std::invalid_argument("PParameter: p must be > 1");
  }
  double value() const { return p_; }

 private:
  double p_;
};

// An admissible control: symmetric, 0 <= nu, I - nu^2 >= 0, Tr(I - nu^2) = 1.
// Instances built by control_from_angle are exact rank-1-complement
// projections I - n (x) n.
struct ControlMatrix {
  Mat2 nu;
};

// nu_theta = I - n (x) n with n = (cos(theta+alpha), sin(theta+alpha)).
ControlMatrix control_from_angle(double theta, double alpha);

// Checks the three admissibility conditions (and symmetry) within tol.
bool is_admissible(const Mat2& nu, double tol);

// Optimization variables at a point plus derived spectral data.
//
// lambda1 >= lambda2 are the eigenvalues of m and odiag is the proper
// rotation with odiag^T m odiag = diag(lambda1, lambda2). alpha is the polar
// angle of q in [0, 2pi); it is meaningless when the frame is characteristic
// (|q| <= tolerance at construction), in which case alpha = 0 by the fixed
// starting-vector convention.
struct Frame {
  double r = 1.0;
  Vec2 q;
  Mat2 m;
  bool characteristic = false;
  double alpha = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Mat2 odiag = Mat2::identity();
};

// Throws PositivityError when r <= 0. m is symmetrized.
Frame make_frame(double r, Vec2 q, Mat2 m, double char_tol = 0.0);
Frame make_frame(const HorizontalJet& jet, double char_tol = kCharacteristicTol);

// Same frame expressed in the eigenbasis of m: q -> odiag^T q,
// m -> diag(lambda1, lambda2), odiag -> I.
Frame diagonalized(const Frame& fr);

// h_p(r, q, M, nu) = -(p-1) r^-1 Tr(nu nu^T q q^T) + Tr(nu nu^T M).
// nu need not be symmetric; the general nu nu^T form is used.
double h_p(const Frame& fr, PParameter p, const Mat2& nu);

// Reduced objective on projection controls for a diagonal m:
//   f_p(theta) = -(p-1) r^-1 |q|^2 sin^2(theta)
//                + m11 sin^2(theta+alpha) + m22 cos^2(theta+alpha).
// Closed form shared by f_p and the landscape sweeps.
double fp_value(double p, double r, double q_norm, double alpha, double m11,
                double m22, double theta);

// f_p for a frame whose m is diagonal (diagonalize first otherwise);
// agrees with h_p(fr, p, control_from_angle(theta, fr.alpha)).
double f_p(const Frame& fr, PParameter p, double theta);

// sup over admissible controls of h_p. The supremum is attained on the
// extreme projections nu_theta; evaluated on a theta grid of `resolution`
// points refined by the exact stationary solve (q != 0) or by the
// characteristic branch value max(lambda1, lambda2) (q = 0).
double H_p(const Frame& fr, PParameter p, int resolution = 256);

}  // namespace hmcf
