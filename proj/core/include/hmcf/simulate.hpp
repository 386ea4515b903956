#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "hmcf/geometry.hpp"
#include "hmcf/optimizer.hpp"

namespace hmcf {

enum class Scheme { kMidpoint, kEuler };

// Time grid, path count and RNG seed for the controlled dynamics
//   d xi = sqrt(2) sigma^T(xi) o (nu dB).
struct SimConfig {
  double t0 = 0.0;
  double t_final = 1.0;
  double dt = 1e-2;
  std::uint64_t n_paths = 1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kMidpoint;
  int threads = 0;  // 0: hardware concurrency

  // Throws std::invalid_argument unless t0 <= t_final, dt > 0,
  // (t_final - t0)/dt integral within 1e-9 and n_paths >= 1.
  void validate() const;
  std::int64_t n_steps() const;
};

// Two independent standard normals keyed by (seed, path, step): a stateless
// counter-based generator (splitmix64 chain + Box-Muller), so paths are
// reproducible and parallelizable with no shared state.
Vec2 gaussian_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step);

// One step of the Stratonovich dynamics with increment dw ~ N(0, dt I):
// predictor xp = x + sqrt(2) sigma^T(x) nu dw, corrector evaluates sigma at
// the midpoint (x + xp)/2.
Point3 step(const Point3& x, const Mat2& nu, const Vec2& dw);

// Plain Euler-Maruyama step; for the Heisenberg sigma the Ito-Stratonovich
// correction vanishes, so both schemes coincide up to rounding.
Point3 step_euler(const Point3& x, const Mat2& nu, const Vec2& dw);

struct ConstantPolicy {
  Mat2 nu;  // must be admissible
};

// Recomputes the optimal control from the local frame of `jet_source`
// at every step.
struct FeedbackPolicy {
  ScalarField jet_source;
  double r_shift = 0.0;
  double p = 10.0;  // must be > 1
  AngleMethod method = AngleMethod::kStationary;
  double char_tol = kCharacteristicTol;
};

using Policy = std::variant<ConstantPolicy, FeedbackPolicy>;

struct PathSample {
  std::vector<Point3> states;  // states[0] = start, one per grid time
  double terminal_payoff = 0.0;
};

// dw for a given (path, step); must already carry the sqrt(dt) scale.
using NoiseFn = std::function<Vec2(std::uint64_t path, std::uint64_t step_index)>;

// Simulates one path on the full grid, storing every state.
// Throws PolicyFrameError if a feedback policy cannot build a frame at a
// visited state.
PathSample sample_path(const Point3& x0, const Policy& policy,
                       const ScalarField& payoff, const SimConfig& cfg,
                       std::uint64_t path_index = 0);
PathSample sample_path(const Point3& x0, const Policy& policy,
                       const ScalarField& payoff, const SimConfig& cfg,
                       const NoiseFn& noise, std::uint64_t path_index = 0);

// Terminal states of all cfg.n_paths paths, indexed by path; parallelized
// over paths, bit-identical for a fixed seed regardless of thread count.
std::vector<Point3> terminal_states(const Point3& x0, const Policy& policy,
                                    const SimConfig& cfg);

struct PolicyEstimate {
  double estimate = 0.0;   // (mean of payoff^p)^(1/p)
  double std_error = 0.0;  // delta-method propagation through the 1/p power
};

struct ValueEstimate {
  double value = 0.0;  // min over policies
  std::vector<PolicyEstimate> per_policy;
};

// Monte-Carlo estimate of the p-value function under each policy, reduced
// by a deterministic pairwise summation. Throws PositivityError if any
// sampled terminal payoff is <= 0.
ValueEstimate estimate_value_p(const Point3& x0, const ScalarField& payoff,
                               PParameter p, std::span<const Policy> policies,
                               const SimConfig& cfg);

// Deterministic pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

}  // namespace hmcf
