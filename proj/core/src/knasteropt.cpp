#include "simplexforge/knasteropt.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "simplexforge/rng.hpp"
#include "simplexforge/tracepoly.hpp"

namespace simplexforge {

namespace {

constexpr double kPsdThreshold = -1e-10;
constexpr double kMaxDamping = 1e20;
constexpr double kMinDamping = 1e-14;
constexpr int kMaxRestarts = 8;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> descending_eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

OptimizerConfig with_target(const OptimizerConfig& cfg, double f0) {
  OptimizerConfig c = cfg;
  c.f0 = f0;
  return c;
}

double mean_vertex_value(const RotationState& r, const ObjectiveContext& ctx,
                         int power) {
  const RealMatrix w = r.matrix() * ctx.reference();
  double sum = 0.0;
  for (int k = 0; k < w.cols(); ++k) sum += ctx.value(w.col(k), power);
  return sum / static_cast<double>(w.cols());
}

// Solve at `target` from `state`; on failure, reach the target through the
// midpoint between `from` and `target`, up to `depth` times.
PovmFamilyResult solve_with_refinement(const RotationState& state, double from,
                                       double target,
                                       const ObjectiveContext& ctx,
                                       const OptimizerConfig& cfg, int depth) {
  PovmFamilyResult direct = optimize(state, ctx, with_target(cfg, target));
  if (direct.converged || depth <= 0) return direct;
  const double mid = 0.5 * (from + target);
  PovmFamilyResult half =
      solve_with_refinement(state, from, mid, ctx, cfg, depth - 1);
  if (!half.converged) return direct;
  PovmFamilyResult rest = solve_with_refinement(
      RotationState(half.rotation), mid, target, ctx, cfg, depth - 1);
  rest.iterations += direct.iterations + half.iterations;
  rest.wall_time_s += direct.wall_time_s + half.wall_time_s;
  return rest;
}

// Walk from the start's own value to `target` in chunks no larger than
// max_step.
PovmFamilyResult chunked_continuation(const RotationState& start,
                                      double target,
                                      const ObjectiveContext& ctx,
                                      const OptimizerConfig& cfg,
                                      double max_step, int depth) {
  const double from = mean_vertex_value(start, ctx, cfg.power);
  const int chunks = std::max(
      1, static_cast<int>(std::ceil(std::abs(target - from) / max_step)));
  RotationState state = start;
  double previous = from;
  PovmFamilyResult last;
  int iterations = 0;
  double wall = 0.0;
  for (int c = 1; c <= chunks; ++c) {
    const double t = from + (target - from) * c / chunks;
    last = solve_with_refinement(state, previous, t, ctx, cfg, depth);
    iterations += last.iterations;
    wall += last.wall_time_s;
    if (!last.converged) break;
    state = RotationState(last.rotation);
    previous = t;
  }
  last.iterations = iterations;
  last.wall_time_s = wall;
  return last;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (power < 3) throw DomainError("optimizer power must be >= 3");
  if (!(tol_residual > 0.0)) throw DomainError("tol_residual must be > 0");
  if (max_iters < 0) throw DomainError("max_iters must be >= 0");
  if (!(lm_damping > 0.0)) throw DomainError("lm_damping must be > 0");
}

ObjectiveContext::ObjectiveContext(int n)
    : n_(n),
      basis_(n),
      tensor_(structure_tensor(basis_)),
      unit_reference_(regular_simplex(n * n - 1)),
      radius_(pure_state_radius(n)) {
  reference_ = radius_ * unit_reference_.vertices();
}

double ObjectiveContext::value(const RealVector& v, int power) const {
  if (power == 3) return tensor_.contract(v);
  RealVector unused;
  return trace_power_with_gradient(v, power, basis_, unused);
}

double ObjectiveContext::value_with_gradient(const RealVector& v, int power,
                                             RealVector& gradient) const {
  if (power == 3) {
    gradient = tensor_.contract_gradient(v);
    return tensor_.contract(v);
  }
  return trace_power_with_gradient(v, power, basis_, gradient);
}

bool PovmFamilyResult::psd_all() const {
  return std::all_of(psd_flags.begin(), psd_flags.end(),
                     [](bool b) { return b; });
}

double PovmFamilyResult::spectra_spread() const {
  double spread = 0.0;
  for (std::size_t j = 1; j < spectra.size(); ++j) {
    for (std::size_t i = 0; i < spectra[j].size(); ++i) {
      spread = std::max(spread, std::abs(spectra[j][i] - spectra[0][i]));
    }
  }
  return spread;
}

RealVector objective(const RotationState& r, const ObjectiveContext& ctx,
                     const OptimizerConfig& cfg) {
  if (r.ambient_dim() != ctx.ambient_dim()) {
    throw DimensionMismatch("objective: rotation size differs from n^2 - 1");
  }
  const RealMatrix w = r.matrix() * ctx.reference();
  RealVector res(w.cols());
  for (int k = 0; k < w.cols(); ++k) {
    res[k] = ctx.value(w.col(k), cfg.power) - cfg.f0;
  }
  return res;
}

namespace {

// Residuals and Jacobian together; the gradient pass yields both.
void residuals_and_jacobian(const RotationState& r, const ObjectiveContext& ctx,
                            const OptimizerConfig& cfg, RealVector& res,
                            RealMatrix& jac) {
  const int dim = ctx.ambient_dim();
  const RealMatrix w = r.matrix() * ctx.reference();
  res.resize(w.cols());
  jac.resize(w.cols(), skew_dim(dim));
  RealVector grad;
  for (int k = 0; k < w.cols(); ++k) {
    const auto wk = w.col(k);
    res[k] = ctx.value_with_gradient(wk, cfg.power, grad) - cfg.f0;
    // E_l w = e_a w_b - e_b w_a for l = (a, b).
    int l = 0;
    for (int a = 0; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b, ++l) {
        jac(k, l) = grad[a] * wk[b] - grad[b] * wk[a];
      }
    }
  }
}

}  // namespace

RealMatrix objective_jacobian(const RotationState& r,
                              const ObjectiveContext& ctx,
                              const OptimizerConfig& cfg) {
  RealVector res;
  RealMatrix jac;
  residuals_and_jacobian(r, ctx, cfg, res, jac);
  return jac;
}

RotationState rotation_from_vertices(const ObjectiveContext& ctx,
                                     const std::vector<BlochVector>& vertices) {
  if (static_cast<int>(vertices.size()) != ctx.vertex_count()) {
    throw DimensionMismatch("rotation_from_vertices: expected n^2 vertices");
  }
  const int dim = ctx.ambient_dim();
  RealMatrix w(dim, ctx.vertex_count());
  for (int k = 0; k < ctx.vertex_count(); ++k) {
    if (vertices[k].size() != dim) {
      throw DimensionMismatch("rotation_from_vertices: vertex length");
    }
    w.col(k) = vertices[k].coords;
  }
  // The reference is a tight frame: P P^T = (n^2 / N) radius^2 I.
  const double frame = ctx.vertex_count() * ctx.radius() * ctx.radius() / dim;
  const RealMatrix r = w * ctx.reference().transpose() / frame;
  const double drift = orthogonality_defect(r);
  if (drift > 1e-6) {
    throw DomainError(
        "rotation_from_vertices: vertices are not a rotated reference simplex");
  }
  return RotationState(polar_orthonormalize(r));
}

PovmFamilyResult evaluate_orientation(const RotationState& r,
                                      const ObjectiveContext& ctx,
                                      const OptimizerConfig& cfg) {
  PovmFamilyResult out;
  out.dim = ctx.dim();
  out.f0 = cfg.f0;
  out.power = cfg.power;
  out.rotation = r.matrix();
  const RealMatrix w = r.matrix() * ctx.reference();
  double cost = 0.0;
  for (int k = 0; k < w.cols(); ++k) {
    BlochVector v(ctx.dim(), w.col(k));
    const double residual = ctx.value(v.coords, cfg.power) - cfg.f0;
    cost += residual * residual;
    out.per_vertex_residuals.push_back(residual);
    HermitianMatrix m = from_bloch(v, ctx.basis());
    auto spectrum = descending_eigenvalues(m);
    out.psd_flags.push_back(spectrum.back() >= kPsdThreshold);
    out.spectra.push_back(std::move(spectrum));
    out.matrices.push_back(std::move(m));
    out.vertices.push_back(std::move(v));
  }
  out.residual_sum = cost;
  out.converged = cost <= cfg.tol_residual;
  return out;
}

namespace {

struct Segment {
  RotationState state;
  double cost;
  std::vector<double> history;
  int iterations = 0;
};

// Plain LM from `state` until convergence, stall or the iteration budget.
Segment lm_segment(RotationState state, const ObjectiveContext& ctx,
                   const OptimizerConfig& cfg, int budget) {
  RealVector res;
  RealMatrix jac;
  residuals_and_jacobian(state, ctx, cfg, res, jac);
  Segment seg{state, res.squaredNorm(), {}, 0};
  seg.history.push_back(seg.cost);
  double damping = cfg.lm_damping;
  while (seg.cost > cfg.tol_residual && seg.iterations < budget) {
    ++seg.iterations;
    // Dual form of (J^T J + l I) d = -J^T r: d = -J^T (J J^T + l I)^{-1} r,
    // an n^2 x n^2 solve instead of dim SO(N).
    RealMatrix normal = jac * jac.transpose();
    normal.diagonal().array() += damping;
    const RealVector y = normal.ldlt().solve(res);
    const RealVector step = -(jac.transpose() * y);
    if (step.norm() < 1e-15) break;  // critical point of the cost
    const RotationState candidate = seg.state.retract(step);
    const double cand_cost = objective(candidate, ctx, cfg).squaredNorm();
    if (cand_cost < seg.cost) {
      seg.state = candidate;
      seg.cost = cand_cost;
      seg.history.push_back(cand_cost);
      damping = std::max(damping * 0.5, kMinDamping);
      residuals_and_jacobian(seg.state, ctx, cfg, res, jac);
    } else {
      damping *= 4.0;
      if (damping > kMaxDamping) break;
    }
  }
  return seg;
}

}  // namespace

PovmFamilyResult optimize(const RotationState& start,
                          const ObjectiveContext& ctx,
                          const OptimizerConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  Segment best = lm_segment(start, ctx, cfg, cfg.max_iters);
  int iterations = best.iterations;
  int restarts = 0;

  // A stalled run sits at a critical point of the cost (the exact SIC is one:
  // pure states are maxima of the cubic form, so the Jacobian vanishes).
  // Restart from seeded random perturbations of the best state so far.
  CounterRng rng(cfg.seed);
  double kick = 1e-2;
  while (best.cost > cfg.tol_residual && iterations < cfg.max_iters &&
         restarts < kMaxRestarts) {
    ++restarts;
    RealVector params(skew_dim(ctx.ambient_dim()));
    for (auto& x : params) x = rng.normal();
    params *= kick / params.norm();
    Segment seg = lm_segment(best.state.retract(params), ctx, cfg,
                             cfg.max_iters - iterations);
    iterations += seg.iterations;
    if (seg.cost < best.cost) {
      best = std::move(seg);
    } else {
      kick *= 2.0;
    }
  }

  PovmFamilyResult out = evaluate_orientation(best.state, ctx, cfg);
  out.iterations = iterations;
  out.restarts = restarts;
  out.cost_history = std::move(best.history);
  out.wall_time_s = seconds_since(t0);
  return out;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1) throw DomainError("linspace needs steps >= 1");
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    out[i] = (i == steps - 1) ? hi : lo + (hi - lo) * i / (steps - 1);
  }
  return out;
}

std::vector<PovmFamilyResult> scan_f0(const ObjectiveContext& ctx,
                                      const RotationState& start,
                                      double f0_min, double f0_max, int steps,
                                      const OptimizerConfig& cfg,
                                      const ScanOptions& options,
                                      const ScanCallback& on_result) {
  if (steps < 1) throw DomainError("scan_f0 needs steps >= 1");
  cfg.validate();
  const std::vector<double> targets = linspace(f0_min, f0_max, steps);
  std::vector<PovmFamilyResult> results(targets.size());
  const double spacing =
      steps > 1 ? std::abs(f0_max - f0_min) / (steps - 1) : 0.05;
  const double max_step = spacing > 0.0 ? spacing : 0.05;

  if (!options.parallel) {
    const double origin = mean_vertex_value(start, ctx, cfg.power);
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < targets.size(); ++i) {
      if (std::abs(targets[i] - origin) < std::abs(targets[nearest] - origin)) {
        nearest = i;
      }
    }
    auto run_chain = [&](RotationState state, double value, int begin, int end,
                         int dir) {
      for (int i = begin; i != end; i += dir) {
        PovmFamilyResult r = solve_with_refinement(
            state, value, targets[i], ctx, cfg, options.refinements);
        if (r.converged) {
          state = RotationState(r.rotation);
          value = targets[i];
        }
        if (on_result) on_result(r);
        results[i] = std::move(r);
      }
    };
    const int near = static_cast<int>(nearest);
    // The nearest target seeds both directions.
    run_chain(start, origin, near, static_cast<int>(targets.size()), 1);
    RotationState down_state = start;
    double down_value = origin;
    if (results[nearest].converged) {
      down_state = RotationState(results[nearest].rotation);
      down_value = targets[nearest];
    }
    run_chain(down_state, down_value, near - 1, -1, -1);
    return results;
  }

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(targets.size()));
  const CounterRng root(cfg.seed);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      CounterRng rng = root.split(i);
      PovmFamilyResult best;
      RotationState seed_state = start;
      for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        if (attempt > 0) {
          RealVector kick(skew_dim(ctx.ambient_dim()));
          for (auto& x : kick) x = 0.1 * rng.normal();
          seed_state = start.retract(kick);
        }
        PovmFamilyResult r = chunked_continuation(
            seed_state, targets[i], ctx, with_target(cfg, targets[i]),
            max_step, options.refinements);
        r.f0 = targets[i];
        const bool done = r.converged;
        if (attempt == 0 || r.residual_sum < best.residual_sum) {
          best = std::move(r);
        }
        if (done) break;
      }
      best.nondeterministic = true;
      results[i] = std::move(best);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (on_result) {
    for (const auto& r : results) on_result(r);
  }
  return results;
}

HermitianMatrix last_vertex(const std::vector<HermitianMatrix>& first) {
  if (first.empty()) {
    throw DomainError("last_vertex: no elements given");
  }
  const int n = static_cast<int>(first.front().rows());
  if (static_cast<int>(first.size()) != n * n - 1) {
    throw DomainError("last_vertex: expected " + std::to_string(n * n - 1) +
                      " elements, got " + std::to_string(first.size()));
  }
  std::vector<double> trace_dev;
  for (const auto& m : first) {
    trace_dev.push_back(std::abs(m.trace().real() - 1.0));
  }
  if (*std::max_element(trace_dev.begin(), trace_dev.end()) > 1e-10) {
    throw PreconditionError("last_vertex: elements must have unit trace",
                            trace_dev);
  }
  HermitianMatrix out = static_cast<double>(n) * ComplexMatrix::Identity(n, n);
  for (const auto& m : first) out -= m;
  return out;
}

HermitianMatrix circle_point(const HermitianMatrix& a, const HermitianMatrix& b,
                             const HermitianMatrix& c, double theta) {
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const double wa = 2.0 / 3.0 * cs + 1.0 / 3.0;
  const double wb = -cs / 3.0 + inv_sqrt3 * sn + 1.0 / 3.0;
  const double wc = -cs / 3.0 - inv_sqrt3 * sn + 1.0 / 3.0;
  return wa * a + wb * b + wc * c;
}

double circle_cos3_coefficient(int n, double alpha) {
  const double s = std::sqrt(n + 1.0);
  return 2.0 * (2.0 * alpha + s * n - 2.0 * s) / (9.0 * std::pow(n + 1.0, 1.5));
}

double circle_constant(int n, double alpha) {
  const double s = std::sqrt(n + 1.0);
  return (-4.0 * alpha + 7.0 * s * n + 13.0 * s) /
         (9.0 * std::pow(n + 1.0, 1.5));
}

CircleProfile circle_profile(const HermitianMatrix& a, const HermitianMatrix& b,
                             const HermitianMatrix& c, int samples,
                             double tol) {
  const int n = static_cast<int>(a.rows());
  if (b.rows() != n || c.rows() != n) {
    throw DimensionMismatch("circle_profile: elements differ in size");
  }
  if (samples < 3) throw DomainError("circle_profile needs >= 3 samples");
  const double overlap = 1.0 / (n + 1);
  std::vector<double> dev{
      std::abs(a.trace().real() - 1.0),
      std::abs(b.trace().real() - 1.0),
      std::abs(c.trace().real() - 1.0),
      std::abs((a * b).trace().real() - overlap),
      std::abs((b * c).trace().real() - overlap),
      std::abs((a * c).trace().real() - overlap),
  };
  if (*std::max_element(dev.begin(), dev.end()) > tol) {
    throw PreconditionError(
        "circle_profile: elements are not a unit-trace equiangular triple", dev);
  }

  CircleProfile out;
  out.dim = n;
  Eigen::MatrixX2d design(samples, 2);
  RealVector y(samples);
  for (int i = 0; i < samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / samples;
    const double value = trace_power(circle_point(a, b, c, theta), 3);
    out.theta_samples.push_back(theta);
    out.trace_values.push_back(value);
    design(i, 0) = 1.0;
    design(i, 1) = std::cos(3.0 * theta);
    y[i] = value;
  }
  const Eigen::Vector2d coef =
      design.colPivHouseholderQr().solve(y);
  out.fitted_constant = coef[0];
  out.fitted_cos3_coefficient = coef[1];
  out.fit_residual = (design * coef - y).cwiseAbs().maxCoeff();

  out.triple_product = (a * b * c).trace();
  const double mag = std::abs(out.triple_product);
  out.alpha = mag > 0.0 ? out.triple_product.real() / mag : 1.0;
  out.expected_constant = circle_constant(n, out.alpha);
  out.expected_cos3_coefficient = circle_cos3_coefficient(n, out.alpha);
  return out;
}

}  // namespace simplexforge
