#include "hmcf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace hmcf {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mat2 policy_control(const Policy& policy, const Point3& x) {
  if (const auto* c = std::get_if<ConstantPolicy>(&policy)) return c->nu;
  const auto& fb = std::get<FeedbackPolicy>(policy);
  try {
    const HorizontalJet jet = horizontal_jet(fb.jet_source, x, fb.r_shift);
    const Frame fr = make_frame(jet, fb.char_tol);
    return optimal_control(fr, PParameter(fb.p), fb.method).first.nu;
  } catch (const PositivityError& e) {
    std::ostringstream os;
    os << "feedback policy: jet source not evaluable at (" << x.x1 << ", "
       << x.x2 << ", " << x.x3 << "): " << e.what();
    throw PolicyFrameError(os.str());
  }
}

Point3 advance(const Point3& x, const Mat2& nu, const Vec2& dw, Scheme scheme) {
  return scheme == Scheme::kMidpoint ? step(x, nu, dw) : step_euler(x, nu, dw);
}

Point3 run_path(const Point3& x0, const Policy& policy, const SimConfig& cfg,
                const NoiseFn& noise, std::uint64_t path_index,
                std::vector<Point3>* states) {
  const std::int64_t steps = cfg.n_steps();
  Point3 x = x0;
  if (states) {
    states->clear();
    states->reserve(static_cast<std::size_t>(steps) + 1);
    states->push_back(x);
  }
  for (std::int64_t k = 0; k < steps; ++k) {
    const Mat2 nu = policy_control(policy, x);
    const Vec2 dw = noise(path_index, static_cast<std::uint64_t>(k));
    x = advance(x, nu, dw, cfg.scheme);
    if (states) states->push_back(x);
  }
  return x;
}

NoiseFn counter_noise(const SimConfig& cfg) {
  const double scale = std::sqrt(cfg.dt);
  const std::uint64_t seed = cfg.seed;
  return [scale, seed](std::uint64_t path, std::uint64_t k) {
    return scale * gaussian_pair(seed, path, k);
  };
}

int resolve_threads(const SimConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void SimConfig::validate() const {
  if (!(t0 <= t_final)) throw std::invalid_argument("SimConfig: requires t0 <= t_final");
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: requires dt > 0");
  const double s = (t_final - t0) / dt;
  if (std::fabs(s - std::round(s)) > 1e-9) {
    throw std::invalid_argument("SimConfig: (t_final - t0)/dt must be an integer");
  }
  if (n_paths < 1) throw std::invalid_argument("SimConfig: requires n_paths >= 1");
}

std::int64_t SimConfig::n_steps() const {
  return std::llround((t_final - t0) / dt);
}

Vec2 gaussian_pair(std::uint64_t seed, std::uint64_t path, std::uint64_t step) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ path);
  s = splitmix64(s ^ step);
  const std::uint64_t a = splitmix64(s);
  const std::uint64_t b = splitmix64(s ^ 0xda942042e4dd58b5ULL);
  const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;          // [0, 1)
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Point3 step_euler(const Point3& x, const Mat2& nu, const Vec2& dw) {
  const Vec2 w = nu * dw;
  return {x.x1 + kSqrt2 * w.x, x.x2 + kSqrt2 * w.y,
          x.x3 + kSqrt2 * 0.5 * (x.x1 * w.y - x.x2 * w.x)};
}

Point3 step(const Point3& x, const Mat2& nu, const Vec2& dw) {
  const Vec2 w = nu * dw;
  const Point3 pred{x.x1 + kSqrt2 * w.x, x.x2 + kSqrt2 * w.y,
                    x.x3 + kSqrt2 * 0.5 * (x.x1 * w.y - x.x2 * w.x)};
  const double m1 = 0.5 * (x.x1 + pred.x1);
  const double m2 = 0.5 * (x.x2 + pred.x2);
  return {pred.x1, pred.x2, x.x3 + kSqrt2 * 0.5 * (m1 * w.y - m2 * w.x)};
}

PathSample sample_path(const Point3& x0, const Policy& policy,
                       const ScalarField& payoff, const SimConfig& cfg,
                       std::uint64_t path_index) {
  return sample_path(x0, policy, payoff, cfg, counter_noise(cfg), path_index);
}

PathSample sample_path(const Point3& x0, const Policy& policy,
                       const ScalarField& payoff, const SimConfig& cfg,
                       const NoiseFn& noise, std::uint64_t path_index) {
  cfg.validate();
  PathSample out;
  const Point3 terminal = run_path(x0, policy, cfg, noise, path_index, &out.states);
  out.terminal_payoff = payoff.value(terminal);
  return out;
}

std::vector<Point3> terminal_states(const Point3& x0, const Policy& policy,
                                    const SimConfig& cfg) {
  cfg.validate();
  const std::uint64_t n = cfg.n_paths;
  std::vector<Point3> out(n);
  const NoiseFn noise = counter_noise(cfg);

  const int threads = std::min<std::int64_t>(resolve_threads(cfg), static_cast<std::int64_t>(n));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) {
      out[i] = run_path(x0, policy, cfg, noise, i, nullptr);
    }
    return out;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) {
          out[i] = run_path(x0, policy, cfg, noise, i, nullptr);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

ValueEstimate estimate_value_p(const Point3& x0, const ScalarField& payoff,
                               PParameter p, std::span<const Policy> policies,
                               const SimConfig& cfg) {
  if (policies.empty()) {
    throw std::invalid_argument("estimate_value_p: policy list must be non-empty");
  }
  cfg.validate();
  for (const Policy& policy : policies) {
    if (const auto* c = std::get_if<ConstantPolicy>(&policy)) {
      if (!is_admissible(c->nu, 1e-9)) {
        throw std::invalid_argument("estimate_value_p: constant policy control not admissible");
      }
    }
  }

  ValueEstimate out;
  out.value = std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(cfg.n_paths);
  for (const Policy& policy : policies) {
    const std::vector<Point3> terminals = terminal_states(x0, policy, cfg);
    std::vector<double> powered(terminals.size());
    for (std::size_t i = 0; i < terminals.size(); ++i) {
      const double g = payoff.value(terminals[i]);
      if (!(g > 0.0)) {
        std::ostringstream os;
        os << "estimate_value_p: terminal payoff " << g << " <= 0 on path " << i;
        throw PositivityError(os.str());
      }
      powered[i] = std::pow(g, p.value());
    }
    const double mean = pairwise_sum(powered) / n;
    const double estimate = std::pow(mean, 1.0 / p.value());

    double std_error = 0.0;
    if (cfg.n_paths > 1) {
      std::vector<double> sq(powered.size());
      for (std::size_t i = 0; i < powered.size(); ++i) {
        const double d = powered[i] - mean;
        sq[i] = d * d;
      }
      const double var = pairwise_sum(sq) / (n - 1.0);
      const double se_mean = std::sqrt(var / n);
      std_error = estimate / (p.value() * mean) * se_mean;
    }
    out.per_policy.push_back({estimate, std_error});
    out.value = std::min(out.value, estimate);
  }
  return out;
}

}  // namespace hmcf
