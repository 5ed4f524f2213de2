#include "spherechord/stats.hpp"

namespace spherechord {

EmpiricalCDF::EmpiricalCDF(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::domain_error("EmpiricalCDF: empty sample set");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCDF empirical_cdf(std::vector<double> samples) {
  return EmpiricalCDF(std::move(samples));
}

double ks_statistic(const EmpiricalCDF& ecdf, const std::function<double(double)>& cdf) {
  const auto& xs = ecdf.sorted_samples();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    // advance through ties so F-hat's value at the atom is exact
    const double x = xs[i];
    const std::size_t below = i;
    while (i < xs.size() && xs[i] == x) ++i;
    const double f_right = cdf(x);
    // left limit of the reference; exact for step references with a jump
    // at the atom, indistinguishable from f_right for continuous ones
    const double eps = 1e-12 * std::max(1.0, std::abs(x));
    const double f_left = cdf(x - eps);
    d = std::max(d, static_cast<double>(i) / n - f_right);
    d = std::max(d, f_left - static_cast<double>(below) / n);
  }
  return d;
}

double ks_statistic_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b) {
  const auto& xs = a.sorted_samples();
  const auto& ys = b.sorted_samples();
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= x) ++i;
    while (j < ys.size() && ys[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

PiecewiseLinearCDF::PiecewiseLinearCDF(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size() || grid_.size() < 2) {
    throw std::domain_error("PiecewiseLinearCDF: need matching columns with >= 2 rows");
  }
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i - 1])) {
      throw std::domain_error("PiecewiseLinearCDF: grid must be strictly increasing");
    }
    if (values_[i] < values_[i - 1] - 1e-12) {
      throw std::domain_error("PiecewiseLinearCDF: values must be nondecreasing");
    }
  }
}

double PiecewiseLinearCDF::operator()(double x) const {
  if (x <= grid_.front()) return values_.front();
  if (x >= grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
  const double w = (x - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["params"] = params;
  j["stats"] = stats;
  j["thresholds"] = thresholds;
  j["pass"] = pass;
  j["n"] = n;
  j["seed"] = seed;
  j["ms"] = ms;
  return j;
}

}  // namespace spherechord
