#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace spherechord {

struct Quadrature {
  double value = 0.0;
  double error_estimate = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double best, double err)
      : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

namespace detail {

template <typename F>
void adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth,
                      std::int64_t& evals_left, Quadrature& acc, bool& converged) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals_left -= 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const bool width_floor = (b - a) < 1e-14 * (1.0 + std::abs(a) + std::abs(b));
  const bool out_of_budget = depth <= 0 || evals_left <= 0;
  if (std::abs(delta) <= 15.0 * tol || width_floor || out_of_budget) {
    acc.value += left + right + delta / 15.0;
    acc.error_estimate += std::abs(delta) / 15.0;
    if (out_of_budget && !(std::abs(delta) <= 15.0 * tol) && !width_floor) converged = false;
    return;
  }
  adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals_left, acc, converged);
  adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals_left, acc, converged);
}

}  // namespace detail

// Adaptive Simpson with an absolute error target. Callers must split at
// integrand kinks themselves (e.g. support endpoints); Simpson converges
// poorly across them.
template <typename F>
Quadrature adaptive_quadrature(F&& f, double a, double b, double tol) {
  if (!(a <= b)) throw std::domain_error("adaptive_quadrature: requires a <= b");
  if (!(tol > 0.0)) throw std::domain_error("adaptive_quadrature: tol must be > 0");
  if (a == b) return {0.0, 0.0};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Quadrature acc;
  bool converged = true;
  std::int64_t evals_left = 4000000;
  detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48, evals_left, acc, converged);
  if (!converged && acc.error_estimate > tol) {
    throw QuadratureError("adaptive_quadrature: max depth reached before tolerance",
                          acc.value, acc.error_estimate);
  }
  return acc;
}

// Right-continuous empirical distribution function.
class EmpiricalCDF {
 public:
  explicit EmpiricalCDF(std::vector<double> samples);

  double operator()(double x) const;
  std::int64_t size() const { return static_cast<std::int64_t>(sorted_.size()); }
  const std::vector<double>& sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

EmpiricalCDF empirical_cdf(std::vector<double> samples);

// One-sample Kolmogorov-Smirnov statistic: sup-norm distance between the
// empirical CDF and a reference CDF, evaluated at the sample points with
// both one-sided gaps.
double ks_statistic(const EmpiricalCDF& ecdf, const std::function<double(double)>& cdf);

double ks_statistic_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b);

// Monotone curve sampled on a grid, evaluated by linear interpolation;
// constant extrapolation outside the grid.
class PiecewiseLinearCDF {
 public:
  PiecewiseLinearCDF(std::vector<double> grid, std::vector<double> values);

  double operator()(double x) const;
  double support_max() const { return grid_.back(); }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

struct VerificationReport {
  std::string name;
  nlohmann::ordered_json params;
  nlohmann::ordered_json stats;
  nlohmann::ordered_json thresholds;
  bool pass = false;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double ms = 0.0;

  // Field names and order are stable: name, params, stats, thresholds,
  // pass, n, seed, ms.
  nlohmann::ordered_json to_json() const;
};

}  // namespace spherechord
