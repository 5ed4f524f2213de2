#include "spherechord/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "spherechord/stats.hpp"

namespace spherechord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInnerQuadTol = 1e-13;

double binomial(int n, int k) {
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result *= static_cast<double>(n - k + i) / i;
  return result;
}

double double_factorial(int n) {
  // (-1)!! = 0!! = 1
  double result = 1.0;
  for (int i = n; i >= 2; i -= 2) result *= i;
  return result;
}

// Transform bracket coefficient: omega_d / (2 pi), which equals kappa_{d-2}.
double bracket_coefficient(int d) { return sphere_surface_area(d) / (2.0 * kPi); }

}  // namespace

double sin_power_antiderivative(int n, double t) {
  if (n < 0) throw std::domain_error("sin_power_antiderivative: n must be >= 0");
  if (n == 0) return t;
  const double s = std::sin(t);
  const double c = std::cos(t);
  double value = (n % 2 == 0) ? t : 1.0 - c;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
    value = -c * std::pow(s, k - 1) / k + static_cast<double>(k - 1) / k * value;
  }
  return value;
}

double sin_power_double_antiderivative(int n, double t) {
  if (n < 0) throw std::domain_error("sin_power_double_antiderivative: n must be >= 0");
  if (n == 0) return 0.5 * t * t;
  const double s = std::sin(t);
  double value = (n % 2 == 0) ? 0.5 * t * t : t - s;
  for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
    value = static_cast<double>(k - 1) / k * value -
            std::pow(s, k) / (static_cast<double>(k) * k);
  }
  return value;
}

double reduction_integral(int k, double t) {
  if (k < 1) throw std::domain_error("reduction_integral: k must be >= 1");
  if (!(t >= 0.0) || !(t < kPi / 2.0)) {
    throw std::domain_error("reduction_integral: t must lie in [0, pi/2)");
  }
  const double sec2 = 1.0 / (std::cos(t) * std::cos(t));
  double sum = 1.0;
  double sec_power = 1.0;
  for (int l = 1; l <= k - 1; ++l) {
    sec_power *= sec2;
    sum += double_factorial(2 * l - 1) / double_factorial(2 * l) * sec_power;
  }
  return double_factorial(2 * k - 2) / double_factorial(2 * k - 1) * std::tan(t) * sum;
}

double cap_sigma_survival(const SphericalCap& cap, int d, double s, bool* clamped) {
  if (d != cap.dim()) throw std::domain_error("cap_sigma_survival: dimension mismatch");
  if (clamped) *clamped = false;
  const double r = cap.radius();
  if (s < 0.0) {
    if (clamped) *clamped = true;
    return 1.0;
  }
  if (s >= 2.0 * r) {
    if (clamped && s > 2.0 * r) *clamped = true;
    return 0.0;
  }
  const double cr = std::cos(r);
  const double base = 1.0 - cr * cr / (std::cos(0.5 * s) * std::cos(0.5 * s));
  const double sr = std::sin(r);
  return std::pow(std::max(base, 0.0) / (sr * sr), 0.5 * (d - 2));
}

SigmaCDF SigmaCDF::analytic(std::function<double(double)> cdf, double support_max) {
  if (!cdf) throw std::domain_error("SigmaCDF::analytic: null evaluator");
  if (!(support_max > 0.0)) throw std::domain_error("SigmaCDF::analytic: support must be > 0");
  SigmaCDF out;
  out.kind_ = Kind::Analytic;
  out.cdf_ = cdf;
  out.survival_ = [cdf](double s) { return 1.0 - cdf(s); };
  out.support_max_ = support_max;
  return out;
}

SigmaCDF SigmaCDF::cap_chord(const SphericalCap& cap, int d) {
  if (d != cap.dim()) throw std::domain_error("SigmaCDF::cap_chord: dimension mismatch");
  SigmaCDF out;
  out.kind_ = Kind::Analytic;
  out.cdf_ = [cap, d](double s) { return 1.0 - cap_sigma_survival(cap, d, s); };
  out.survival_ = [cap, d](double s) { return cap_sigma_survival(cap, d, s); };
  out.support_max_ = 2.0 * cap.radius();
  return out;
}

SigmaCDF SigmaCDF::from_samples(std::vector<double> samples) {
  if (samples.empty()) throw std::domain_error("SigmaCDF::from_samples: empty sample set");
  std::sort(samples.begin(), samples.end());
  if (samples.front() < 0.0) {
    throw std::domain_error("SigmaCDF::from_samples: negative chord length");
  }
  SigmaCDF out;
  out.kind_ = Kind::Steps;
  out.knots_ = std::move(samples);
  out.prefix_.resize(out.knots_.size() + 1, 0.0);
  for (std::size_t i = 0; i < out.knots_.size(); ++i) {
    out.prefix_[i + 1] = out.prefix_[i] + out.knots_[i];
  }
  out.support_max_ = out.knots_.back();
  return out;
}

SigmaCDF SigmaCDF::from_table(std::vector<double> s, std::vector<double> f) {
  if (s.size() != f.size()) throw std::domain_error("SigmaCDF::from_table: column length mismatch");
  if (s.empty()) throw std::domain_error("SigmaCDF::from_table: empty table");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool bad_s = i > 0 && !(s[i] > s[i - 1]);
    const bool bad_f = (i > 0 && f[i] < f[i - 1] - 1e-12) || f[i] < -1e-12 || f[i] > 1.0 + 1e-9;
    if (bad_s || bad_f) {
      std::ostringstream msg;
      msg << "SigmaCDF::from_table: non-monotone CDF at row " << i << " (s=" << s[i]
          << ", F=" << f[i] << ")";
      throw std::domain_error(msg.str());
    }
  }
  if (s.front() > 0.0) {
    s.insert(s.begin(), 0.0);
    f.insert(f.begin(), 0.0);
  } else if (s.front() < 0.0) {
    throw std::domain_error("SigmaCDF::from_table: negative abscissa");
  }
  SigmaCDF out;
  out.kind_ = Kind::Table;
  out.knots_ = std::move(s);
  out.knot_cdf_ = std::move(f);
  // Exact integral of
  //   1 - F  (piecewise linear)  up to each knot.
  out.prefix_.resize(out.knots_.size(), 0.0);
  for (std::size_t i = 1; i < out.knots_.size(); ++i) {
    const double w = out.knots_[i] - out.knots_[i - 1];
    const double surv_avg = 1.0 - 0.5 * (out.knot_cdf_[i] + out.knot_cdf_[i - 1]);
    out.prefix_[i] = out.prefix_[i - 1] + w * surv_avg;
  }
  out.support_max_ = out.knots_.back();
  return out;
}

double SigmaCDF::cdf(double s) const {
  switch (kind_) {
    case Kind::Analytic:
      if (s < 0.0) return 0.0;
      if (s >= support_max_) return 1.0;
      return cdf_(s);
    case Kind::Steps: {
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
      return static_cast<double>(it - knots_.begin()) / static_cast<double>(knots_.size());
    }
    case Kind::Table: {
      if (s <= knots_.front()) return knot_cdf_.front();
      if (s >= knots_.back()) return knot_cdf_.back();
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
      const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
      const double w = (s - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
      return knot_cdf_[i - 1] + w * (knot_cdf_[i] - knot_cdf_[i - 1]);
    }
  }
  return 0.0;
}

double SigmaCDF::integrated_survival(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case Kind::Analytic: {
      const double upper = std::min(t, support_max_);
      return adaptive_quadrature([this](double s) { return survival_(s); }, 0.0, upper,
                                 kInnerQuadTol)
          .value;
    }
    case Kind::Steps: {
      // int_0^t (1 - F) = t - (1/n) sum_i (t - s_i)_+
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      const std::size_t k = static_cast<std::size_t>(it - knots_.begin());
      const double n = static_cast<double>(knots_.size());
      return t - (static_cast<double>(k) * t - prefix_[k]) / n;
    }
    case Kind::Table: {
      if (t >= knots_.back()) {
        // survival beyond the table's last knot
        return prefix_.back() + (1.0 - knot_cdf_.back()) * (t - knots_.back());
      }
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - knots_.begin());
      const double w = (t - knots_[i - 1]) / (knots_[i] - knots_[i - 1]);
      const double f_t = knot_cdf_[i - 1] + w * (knot_cdf_[i] - knot_cdf_[i - 1]);
      const double surv_avg = 1.0 - 0.5 * (knot_cdf_[i - 1] + f_t);
      return prefix_[i - 1] + (t - knots_[i - 1]) * surv_avg;
    }
  }
  return 0.0;
}

double DensityCurve::trapezoid_integral() const {
  double total = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    total += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return total;
}

std::vector<double> DensityCurve::cumulative_trapezoid() const {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return out;
}

DensityCurve delta_density_from_sigma(const SigmaCDF& sigma_cdf, double volume,
                                      double boundary_area, int d, std::vector<double> grid) {
  if (!(volume > 0.0)) throw std::domain_error("delta_density_from_sigma: volume must be > 0");
  if (!(boundary_area > 0.0)) {
    throw std::domain_error("delta_density_from_sigma: boundary area must be > 0");
  }
  if (d < 3) throw std::domain_error("delta_density_from_sigma: d must be >= 3");
  if (grid.size() < 2) throw std::domain_error("delta_density_from_sigma: grid too small");
  double prev_f = -1.0;
  double prev_t = -1.0;
  for (double t : grid) {
    if (!(t >= 0.0) || t <= prev_t) {
      throw std::domain_error("delta_density_from_sigma: grid must be increasing and >= 0");
    }
    const double f = sigma_cdf.cdf(t);
    if (f < prev_f - 1e-12) {
      throw std::domain_error("delta_density_from_sigma: sigma CDF is not monotone");
    }
    prev_f = f;
    prev_t = t;
  }

  const double omega_dm1 = sphere_surface_area(d - 1);
  const double coef = bracket_coefficient(d) * boundary_area / volume;

  DensityCurve curve;
  curve.dim = d;
  curve.provenance = sigma_cdf.empirical() ? "transform(empirical sigma)" : "transform(analytic sigma)";
  curve.values.reserve(grid.size());
  for (double t : grid) {
    const double bracket = omega_dm1 - coef * sigma_cdf.integrated_survival(t);
    double value = std::pow(std::sin(t), d - 2) / volume * bracket;
    if (bracket < 0.0) {
      if (curve.clamped_points == 0) curve.first_clamped_t = t;
      ++curve.clamped_points;
      value = 0.0;
    }
    curve.values.push_back(value);
  }
  curve.grid = std::move(grid);
  return curve;
}

namespace {

// int_0^t (1 - cos^2 r / cos^2(s/2))^{(d-2)/2} ds, the cap bracket integral.
// The integrand peaks at s = 0 with value sin^{d-2} r, tiny for small caps
// in high dimension, and the density divides the result by |K|^2; the
// quadrature tolerance has to scale with the integrand's magnitude.
double cap_bracket_integral(const SphericalCap& cap, int d, double t, double rel_tol) {
  const double cr2 = std::cos(cap.radius()) * std::cos(cap.radius());
  const double upper = std::min(t, 2.0 * cap.radius());
  if (upper <= 0.0) return 0.0;
  const double peak = std::pow(std::sin(cap.radius()), d - 2);
  const double tol = std::max(1e-17, rel_tol * peak * std::max(upper, 1e-3));
  return adaptive_quadrature(
             [cr2, d](double s) {
               const double c = std::cos(0.5 * s);
               const double base = 1.0 - cr2 / (c * c);
               return std::pow(std::max(base, 0.0), 0.5 * (d - 2));
             },
             0.0, upper, tol)
      .value;
}

double cap_density_from_bracket(const SphericalCap& cap, int d, double t,
                                double bracket_integral) {
  const double volume = cap_volume(cap, d);
  const double bracket = 1.0 - bracket_coefficient(d) / volume * bracket_integral;
  const double value =
      sphere_surface_area(d - 1) * std::pow(std::sin(t), d - 2) / volume * bracket;
  return std::max(value, 0.0);
}

}  // namespace

double cap_delta_density(const SphericalCap& cap, int d, double t) {
  if (d != cap.dim()) throw std::domain_error("cap_delta_density: dimension mismatch");
  if (t < 0.0 || t > 2.0 * cap.radius()) return 0.0;
  return cap_density_from_bracket(cap, d, t, cap_bracket_integral(cap, d, t, kInnerQuadTol));
}

double even_dim_cap_delta_density(const SphericalCap& cap, int d, double t) {
  if (d != cap.dim()) throw std::domain_error("even_dim_cap_delta_density: dimension mismatch");
  if (d < 4 || d % 2 != 0) {
    throw std::domain_error("even_dim_cap_delta_density: d must be even and >= 4");
  }
  if (t < 0.0 || t > 2.0 * cap.radius()) return 0.0;
  const int m = (d - 2) / 2;
  const double c2 = std::cos(cap.radius()) * std::cos(cap.radius());
  // Binomial expansion of (1 - cos^2 r sec^2(s/2))^m; each power of the
  // secant integrates to a reduction integral, with substitution s = 2u:
  //   int_0^t sec^{2j}(s/2) ds = 2 I_{2j}(t/2), and I_0(x) = x.
  double integral = t;  // j = 0 term
  double sign_c2 = 1.0;
  for (int j = 1; j <= m; ++j) {
    sign_c2 *= -c2;
    integral += binomial(m, j) * sign_c2 * 2.0 * reduction_integral(j, 0.5 * t);
  }
  return cap_density_from_bracket(cap, d, t, integral);
}

double cap_delta_cdf(const SphericalCap& cap, int d, double t) {
  if (d != cap.dim()) throw std::domain_error("cap_delta_cdf: dimension mismatch");
  if (t <= 0.0) return 0.0;
  const double upper = std::min(t, 2.0 * cap.radius());
  return adaptive_quadrature([&](double s) { return cap_delta_density(cap, d, s); }, 0.0,
                             upper, 1e-10)
      .value;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  if (n < 2) throw std::domain_error("uniform_grid: need at least two points");
  if (!(b > a)) throw std::domain_error("uniform_grid: b must exceed a");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  }
  grid.back() = b;
  return grid;
}

}  // namespace spherechord
