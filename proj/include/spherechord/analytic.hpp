#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spherechord/geometry.hpp"

namespace spherechord {

// F_n(t) = int_0^t sin^n s ds, by the recurrence
// F_n = -cos t sin^{n-1} t / n + (n-1)/n F_{n-2}, F_0 = t, F_1 = 1 - cos t.
double sin_power_antiderivative(int n, double t);

// G_n(t) = int_0^t F_n(s) ds, by the recurrence
// G_n = (n-1)/n G_{n-2} - sin^n t / n^2, G_0 = t^2/2, G_1 = t - sin t.
double sin_power_double_antiderivative(int n, double t);

// I_{2k}(t) = int_0^t sec^{2k} s ds for k >= 1, t in [0, pi/2):
// ((2k-2)!!/(2k-1)!!) tan t (1 + sum_{l=1}^{k-1} ((2l-1)!!/(2l)!!) sec^{2l} t).
double reduction_integral(int k, double t);

// P(sigma(K) > s) for a cap: (sin rho(s) / sin r)^{d-2} with
// rho(s) = arccos(cos r / cos(s/2)). Out-of-range s clamps to 1 (s < 0) or
// 0 (s > 2r); `clamped` reports that when non-null.
double cap_sigma_survival(const SphericalCap& cap, int d, double s, bool* clamped = nullptr);

// Chord-length distribution function F_sigma, either analytic or an
// empirical step function; keeps the integral of the survival function
// int_0^t (1 - F_sigma) available in the form the transform needs (adaptive
// quadrature for analytic input, exact piecewise accumulation for steps and
// tables).
class SigmaCDF {
 public:
  static SigmaCDF analytic(std::function<double(double)> cdf, double support_max);
  static SigmaCDF cap_chord(const SphericalCap& cap, int d);
  // Empirical step CDF of chord samples.
  static SigmaCDF from_samples(std::vector<double> samples);
  // Piecewise-linear CDF through (s_i, F_i) knots; a (0, 0) knot is
  // prepended when the table does not start at 0. Throws std::domain_error
  // naming the first offending row if F is not nondecreasing.
  static SigmaCDF from_table(std::vector<double> s, std::vector<double> f);

  double cdf(double s) const;
  double survival(double s) const { return 1.0 - cdf(s); }
  double support_max() const { return support_max_; }
  bool empirical() const { return kind_ != Kind::Analytic; }

  // H(t) = int_0^t (1 - F_sigma(s)) ds
  double integrated_survival(double t) const;

 private:
  enum class Kind { Analytic, Steps, Table };

  SigmaCDF() = default;

  Kind kind_ = Kind::Analytic;
  std::function<double(double)> cdf_;
  std::function<double(double)> survival_;
  std::vector<double> knots_;
  std::vector<double> knot_cdf_;       // Table only
  std::vector<double> prefix_;         // prefix sums / integrals
  double support_max_ = 0.0;
};

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  int dim = 0;
  std::string body;
  std::string provenance;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  // Negative brackets are clamped to zero; estimator noise near the support
  // boundary does this. The first offending grid point is recorded.
  int clamped_points = 0;
  double first_clamped_t = std::numeric_limits<double>::quiet_NaN();

  double trapezoid_integral() const;
  std::vector<double> cumulative_trapezoid() const;
};

// The chord-to-distance transform: on each grid point t,
//   f_Delta(t) = (sin t)^{d-2}/|K| (omega_{d-1}
//                - (omega_d / 2 pi) (|dK|/|K|) int_0^t (1 - F_sigma)).
DensityCurve delta_density_from_sigma(const SigmaCDF& sigma_cdf, double volume,
                                      double boundary_area, int d,
                                      std::vector<double> grid);

// Closed-ish form for caps: the bracket's integrand is
// (1 - cos^2 r / cos^2(s/2))^{(d-2)/2}, integrated by adaptive quadrature.
// Zero outside [0, 2r].
double cap_delta_density(const SphericalCap& cap, int d, double t);

// Same density for even d = 2m+2 through the binomial expansion of the
// integrand and the sec-power reduction integrals; elementary functions only.
double even_dim_cap_delta_density(const SphericalCap& cap, int d, double t);

// F_Delta(t) for a cap, by adaptive quadrature of the density.
double cap_delta_cdf(const SphericalCap& cap, int d, double t);

std::vector<double> uniform_grid(double a, double b, int n);

}  // namespace spherechord
