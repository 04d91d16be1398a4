#include <algorithm>
#include <cmath>
#include <numbers>

#include "simplexforge/knasteropt.hpp"

namespace simplexforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSeparation = kTwoPi / 3.0;  // pairwise dot -1/2 on S^1

struct Configuration {
  std::vector<double> angles;
  std::vector<double> values;
  double spread = 0.0;
};

Configuration evaluate(const CircleFunction& fn, int points, double theta) {
  Configuration c;
  for (int i = 0; i < points; ++i) {
    const double a = theta + i * kSeparation;
    c.angles.push_back(a);
    c.values.push_back(fn(std::cos(a), std::sin(a)));
  }
  const auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
  c.spread = *hi - *lo;
  return c;
}

KnasterS1Result finish(const Configuration& c, int iterations) {
  KnasterS1Result out;
  out.angles = c.angles;
  out.values = c.values;
  for (double a : c.angles) {
    RealVector p(2);
    p << std::cos(a), std::sin(a);
    out.points.push_back(std::move(p));
  }
  double sum = 0.0;
  for (double v : c.values) sum += v;
  out.common_value = sum / static_cast<double>(c.values.size());
  out.spread = c.spread;
  out.iterations = iterations;
  return out;
}

}  // namespace

KnasterS1Result knaster_s1(const CircleFunction& fn, int points, double tol,
                           int max_iters) {
  if (points != 2 && points != 3) {
    throw DomainError("knaster_s1 supports 2 or 3 points");
  }
  const Configuration initial = evaluate(fn, points, 0.0);
  if (initial.spread <= tol) return finish(initial, 0);

  constexpr int kGrid = 3600;
  if (points == 2) {
    // Sweep p1 from the argmin of fn to its argmax; h changes sign on the way.
    double theta_min = 0.0;
    double theta_max = 0.0;
    double vmin = fn(1.0, 0.0);
    double vmax = vmin;
    for (int i = 1; i < kGrid; ++i) {
      const double t = kTwoPi * i / kGrid;
      const double v = fn(std::cos(t), std::sin(t));
      if (v < vmin) {
        vmin = v;
        theta_min = t;
      }
      if (v > vmax) {
        vmax = v;
        theta_max = t;
      }
    }
    auto h = [&](double t) {
      return fn(std::cos(t), std::sin(t)) -
             fn(std::cos(t + kSeparation), std::sin(t + kSeparation));
    };
    double lo = theta_min;
    double hi = theta_max < theta_min ? theta_max + kTwoPi : theta_max;
    double hlo = h(lo);
    if (std::abs(hlo) <= tol) return finish(evaluate(fn, 2, lo), 0);
    if (std::abs(h(hi)) <= tol) return finish(evaluate(fn, 2, hi), 0);
    for (int iter = 1; iter <= max_iters; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double hm = h(mid);
      if (std::abs(hm) <= tol || hi - lo < 1e-15) {
        Configuration c = evaluate(fn, 2, mid);
        if (c.spread > tol) break;
        return finish(c, iter);
      }
      if ((hm < 0.0) == (hlo < 0.0)) {
        lo = mid;
        hlo = hm;
      } else {
        hi = mid;
      }
    }
    throw ConvergenceError("knaster_s1: bisection did not reach tolerance");
  }

  // Three points: the configuration is 2 pi / 3 periodic in theta.
  double best_theta = 0.0;
  double best_spread = initial.spread;
  const double period = kSeparation;
  for (int i = 1; i < kGrid; ++i) {
    const double t = period * i / kGrid;
    const double s = evaluate(fn, 3, t).spread;
    if (s < best_spread) {
      best_spread = s;
      best_theta = t;
    }
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_theta - period / kGrid;
  double b = best_theta + period / kGrid;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = evaluate(fn, 3, x1).spread;
  double f2 = evaluate(fn, 3, x2).spread;
  for (int iter = 1; iter <= max_iters; ++iter) {
    const double mid = 0.5 * (a + b);
    Configuration c = evaluate(fn, 3, mid);
    if (c.spread <= tol) return finish(c, iter);
    if (b - a < 1e-15) break;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = evaluate(fn, 3, x1).spread;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = evaluate(fn, 3, x2).spread;
    }
  }
  throw ConvergenceError(
      "knaster_s1: no rigid equilateral triple with equal values found");
}

CircleFunction named_circle_function(const std::string& name) {
  if (name == "sin3") {
    return [](double x, double y) { return 3.0 * x * x * y - y * y * y; };
  }
  if (name == "height") {
    return [](double, double y) { return y; };
  }
  if (name == "const") {
    return [](double, double) { return 1.0; };
  }
  throw DomainError("unknown circle function '" + name + "'");
}

}  // namespace simplexforge
