#include "spherechord/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <utility>

#include "spherechord/samplers.hpp"

namespace spherechord {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKsCritical95 = 1.36;
constexpr double kKsSlack = 1.5;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

double sd_of(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

SphericalCap axis_cap(int d, double r) {
  Vector e = Vector::Zero(d);
  e[d - 1] = 1.0;
  return SphericalCap(UnitVector(std::move(e)), r);
}

nlohmann::ordered_json cap_params(const SphericalCap& cap, int d, const CheckConfig& cfg) {
  nlohmann::ordered_json p;
  p["d"] = d;
  p["r"] = cap.radius();
  p["workers"] = cfg.workers;
  return p;
}

VerificationReport hit_check_impl(std::string name, nlohmann::ordered_json params,
                                  const std::function<double(const TwoPlane&)>& indicator,
                                  double expected, double expected_se, int d,
                                  const CheckConfig& cfg) {
  const auto t0 = Clock::now();
  const std::vector<double> hits = map_haar_planes(d, cfg.n, cfg.seed, cfg.workers, indicator);
  const double rate = mean_of(hits);
  const double se =
      std::sqrt(std::max(expected * (1.0 - expected), 0.0) / static_cast<double>(cfg.n) +
                expected_se * expected_se);
  VerificationReport report;
  report.name = std::move(name);
  report.params = std::move(params);
  report.stats = {{"hit_rate", rate}, {"expected", expected}, {"abs_diff", std::abs(rate - expected)}, {"se", se}};
  report.thresholds = {{"abs_diff", 3.0 * se}};
  report.pass = std::abs(rate - expected) <= 3.0 * se;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.ms = elapsed_ms(t0);
  return report;
}

VerificationReport mean_chord_impl(std::string name, nlohmann::ordered_json params,
                                   const std::function<double(const TwoPlane&)>& chord_or_zero,
                                   double expected, double expected_se, int d,
                                   const CheckConfig& cfg) {
  const auto t0 = Clock::now();
  const std::vector<double> values =
      map_haar_planes(d, cfg.n, cfg.seed, cfg.workers, chord_or_zero);
  const double mean = mean_of(values);
  const double se = std::sqrt(sd_of(values, mean) * sd_of(values, mean) / static_cast<double>(cfg.n) +
                              expected_se * expected_se);
  VerificationReport report;
  report.name = std::move(name);
  report.params = std::move(params);
  report.stats = {{"mean", mean}, {"expected", expected}, {"abs_diff", std::abs(mean - expected)}, {"se", se}};
  report.thresholds = {{"abs_diff", 3.0 * se}};
  report.pass = std::abs(mean - expected) <= 3.0 * se;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.ms = elapsed_ms(t0);
  return report;
}

}  // namespace

VerificationReport crofton_hit_check(const SphericalCap& cap, int d, const CheckConfig& cfg) {
  const double expected = cap_boundary_area(cap, d) / sphere_surface_area(d - 1);
  return hit_check_impl(
      "crofton_hit", cap_params(cap, d, cfg),
      [&cap](const TwoPlane& plane) { return chord_arc(cap, plane).hit ? 1.0 : 0.0; },
      expected, 0.0, d, cfg);
}

VerificationReport crofton_hit_check(const ConvexSphericalBody& body, int d,
                                     const CheckConfig& cfg, double known_boundary_area) {
  double area = known_boundary_area;
  double area_se = 0.0;
  if (!(area > 0.0)) {
    const McEstimate est = body_boundary_area_mc(body, d, cfg.n, cfg.seed + 1);
    area = est.value;
    area_se = est.std_error;
  }
  const double omega = sphere_surface_area(d - 1);
  nlohmann::ordered_json params;
  params["d"] = d;
  params["body"] = "halfspaces";
  params["facets"] = body.normals().size();
  params["boundary_area"] = area;
  params["workers"] = cfg.workers;
  return hit_check_impl(
      "crofton_hit", std::move(params),
      [&body](const TwoPlane& plane) { return chord_arc(body, plane).hit ? 1.0 : 0.0; },
      area / omega, area_se / omega, d, cfg);
}

VerificationReport crofton_mean_chord_check(const SphericalCap& cap, int d,
                                            const CheckConfig& cfg) {
  const double expected = 2.0 * kPi / sphere_surface_area(d) * cap_volume(cap, d);
  return mean_chord_impl(
      "crofton_mean_chord", cap_params(cap, d, cfg),
      [&cap](const TwoPlane& plane) { return chord_arc(cap, plane).length; }, expected, 0.0,
      d, cfg);
}

VerificationReport crofton_mean_chord_check(const ConvexSphericalBody& body, int d,
                                            const CheckConfig& cfg, double known_volume) {
  double volume = known_volume;
  double volume_se = 0.0;
  if (!(volume > 0.0)) {
    const BodyMeasures measures = body_measures_mc(body, d, cfg.n, cfg.seed + 1, cfg.workers);
    volume = measures.volume.value;
    volume_se = measures.volume.std_error;
  }
  const double scale = 2.0 * kPi / sphere_surface_area(d);
  nlohmann::ordered_json params;
  params["d"] = d;
  params["body"] = "halfspaces";
  params["facets"] = body.normals().size();
  params["volume"] = volume;
  params["workers"] = cfg.workers;
  return mean_chord_impl(
      "crofton_mean_chord", std::move(params),
      [&body](const TwoPlane& plane) { return chord_arc(body, plane).length; },
      scale * volume, scale * volume_se, d, cfg);
}

VerificationReport bp_identity_check(const SphericalCap& cap, int d, const CheckConfig& cfg) {
  const auto t0 = Clock::now();
  const double b = bp_constant(d);
  const std::vector<double> values = map_haar_planes(
      d, cfg.n, cfg.seed, cfg.workers, [&cap, d](const TwoPlane& plane) {
        const ChordArc arc = chord_arc(cap, plane);
        return arc.hit ? sin_power_double_antiderivative(d - 2, arc.length) : 0.0;
      });
  const double mean = mean_of(values);
  const double rhs = 2.0 * b * mean;
  const double rhs_se = 2.0 * b * sd_of(values, mean) / std::sqrt(static_cast<double>(cfg.n));
  const double volume = cap_volume(cap, d);
  const double lhs = volume * volume;
  const double rel_diff = std::abs(rhs - lhs) / lhs;
  const double threshold = std::max(0.01, 3.0 * rhs_se / lhs);

  VerificationReport report;
  report.name = "bp_identity";
  report.params = cap_params(cap, d, cfg);
  report.stats = {{"lhs", lhs}, {"rhs", rhs}, {"rel_diff", rel_diff}, {"rhs_se", rhs_se}};
  report.thresholds = {{"rel_diff", threshold}};
  report.pass = rel_diff <= threshold;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.ms = elapsed_ms(t0);
  return report;
}

VerificationReport cap_sigma_cdf_check(const SphericalCap& cap, int d, const CheckConfig& cfg) {
  const auto t0 = Clock::now();
  const SampleBatch batch = sample_sigma_parallel(cap, d, cfg.n, cfg.seed, cfg.workers);
  const EmpiricalCDF ecdf(batch.values);
  const double ks = ks_statistic(
      ecdf, [&cap, d](double s) { return 1.0 - cap_sigma_survival(cap, d, s); });
  const double threshold = kKsSlack * kKsCritical95 / std::sqrt(static_cast<double>(cfg.n));

  VerificationReport report;
  report.name = "cap_sigma_cdf";
  report.params = cap_params(cap, d, cfg);
  report.params["n_attempted"] = batch.n_attempted;
  report.stats = {{"ks", ks},
                  {"hit_rate", static_cast<double>(batch.n_accepted()) /
                                   static_cast<double>(batch.n_attempted)}};
  report.thresholds = {{"ks", threshold}};
  report.pass = ks <= threshold;
  report.n = cfg.n;
  report.seed = cfg.seed;
  report.ms = elapsed_ms(t0);
  return report;
}

namespace {

VerificationReport theorem_check_impl(std::string body_desc, int d, const SigmaCDF& sigma_cdf,
                                      double volume, double boundary_area,
                                      const std::vector<double>& delta_samples,
                                      std::int64_t n_sigma, const TheoremCheckOptions& opt,
                                      Clock::time_point t0,
                                      nlohmann::ordered_json extra_params) {
  const double support = sigma_cdf.support_max();
  DensityCurve density = delta_density_from_sigma(
      sigma_cdf, volume, boundary_area, d, uniform_grid(0.0, support, opt.grid_points));
  const PiecewiseLinearCDF cdf_a(density.grid, density.cumulative_trapezoid());
  const EmpiricalCDF ecdf_b(delta_samples);
  const double ks = ks_statistic(ecdf_b, [&cdf_a](double t) { return cdf_a(t); });

  double threshold = opt.ks_threshold_override;
  if (!(threshold > 0.0)) {
    if (sigma_cdf.empirical()) {
      threshold = kKsSlack * kKsCritical95 *
                  std::sqrt(1.0 / static_cast<double>(n_sigma) +
                            1.0 / static_cast<double>(opt.n_delta));
    } else {
      threshold = kKsSlack * kKsCritical95 / std::sqrt(static_cast<double>(opt.n_delta));
    }
  }

  VerificationReport report;
  report.name = "theorem_end_to_end";
  report.params = std::move(extra_params);
  report.params["body"] = std::move(body_desc);
  report.params["d"] = d;
  report.params["n_sigma"] = n_sigma;
  report.params["n_delta"] = opt.n_delta;
  report.params["grid_points"] = opt.grid_points;
  report.params["workers"] = opt.workers;
  report.stats = {{"ks", ks},
                  {"density_integral", density.trapezoid_integral()},
                  {"clamped_points", density.clamped_points}};
  report.thresholds = {{"ks", threshold}};
  report.pass = ks <= threshold;
  report.n = opt.n_delta;
  report.seed = opt.seed;
  report.ms = elapsed_ms(t0);
  return report;
}

}  // namespace

VerificationReport theorem_end_to_end_check(const SphericalCap& cap, int d,
                                            bool analytic_sigma,
                                            const TheoremCheckOptions& opt) {
  const auto t0 = Clock::now();
  const double volume = cap_volume(cap, d);
  const double boundary = cap_boundary_area(cap, d);
  const SampleBatch delta = sample_delta_parallel(cap, d, opt.n_delta, opt.seed, opt.workers);

  nlohmann::ordered_json params;
  params["r"] = cap.radius();
  params["analytic_sigma"] = analytic_sigma;

  if (analytic_sigma) {
    return theorem_check_impl("cap", d, SigmaCDF::cap_chord(cap, d), volume, boundary,
                              delta.values, 0, opt, t0, std::move(params));
  }
  const SampleBatch sigma =
      sample_sigma_parallel(cap, d, opt.n_sigma, opt.seed + 0x51a3c5ULL, opt.workers);
  return theorem_check_impl("cap", d, SigmaCDF::from_samples(sigma.values), volume, boundary,
                            delta.values, opt.n_sigma, opt, t0, std::move(params));
}

VerificationReport theorem_end_to_end_check(const ConvexSphericalBody& body, int d,
                                            const TheoremCheckOptions& opt) {
  const auto t0 = Clock::now();
  const BodyMeasures measures =
      body_measures_mc(body, d, opt.n_measures, opt.seed + 0xb0d7ULL, opt.workers);
  const SampleBatch sigma =
      sample_sigma_parallel(body, d, opt.n_sigma, opt.seed + 0x51a3c5ULL, opt.workers);
  const SampleBatch delta = sample_delta_parallel(body, d, opt.n_delta, opt.seed, opt.workers);

  nlohmann::ordered_json params;
  params["analytic_sigma"] = false;
  params["n_measures"] = opt.n_measures;
  params["volume_mc"] = measures.volume.value;
  params["boundary_mc"] = measures.boundary_area.value;

  return theorem_check_impl("halfspaces", d, SigmaCDF::from_samples(sigma.values),
                            measures.volume.value, measures.boundary_area.value, delta.values,
                            opt.n_sigma, opt, t0, std::move(params));
}

std::vector<VerificationReport> run_suite(const std::string& suite, std::int64_t n,
                                          std::uint64_t seed, int workers,
                                          const std::optional<ConvexSphericalBody>& extra_body) {
  const bool all = suite == "default";
  if (!all && suite != "crofton" && suite != "bp" && suite != "theorem" &&
      suite != "cap-sigma") {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  std::vector<VerificationReport> reports;
  const CheckConfig cfg{n, seed, workers};

  if (all || suite == "cap-sigma") {
    reports.push_back(cap_sigma_cdf_check(axis_cap(3, kPi / 3.0), 3, cfg));
    reports.push_back(cap_sigma_cdf_check(axis_cap(4, 0.8), 4, cfg));
    reports.push_back(cap_sigma_cdf_check(axis_cap(6, 1.2), 6, cfg));
  }
  if (all || suite == "crofton") {
    reports.push_back(crofton_hit_check(axis_cap(3, kPi / 3.0), 3, cfg));
    reports.push_back(crofton_hit_check(axis_cap(4, 0.8), 4, cfg));
    reports.push_back(crofton_mean_chord_check(axis_cap(3, kPi / 3.0), 3, cfg));
    if (extra_body) {
      reports.push_back(crofton_hit_check(*extra_body, extra_body->dim(), cfg));
      reports.push_back(crofton_mean_chord_check(*extra_body, extra_body->dim(), cfg));
    } else {
      const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
      reports.push_back(crofton_hit_check(octant, 3, cfg, orthant_boundary_area(3)));
      reports.push_back(crofton_mean_chord_check(octant, 3, cfg, orthant_volume(3)));
    }
  }
  if (all || suite == "bp") {
    CheckConfig bp_cfg = cfg;
    bp_cfg.n = 2 * n;
    reports.push_back(bp_identity_check(axis_cap(3, kPi / 3.0), 3, bp_cfg));
    reports.push_back(bp_identity_check(axis_cap(4, 0.8), 4, bp_cfg));
  }
  if (all || suite == "theorem") {
    TheoremCheckOptions cap_opt;
    cap_opt.n_delta = n;
    cap_opt.seed = seed;
    cap_opt.workers = workers;
    reports.push_back(theorem_end_to_end_check(axis_cap(3, kPi / 3.0), 3, true, cap_opt));

    TheoremCheckOptions body_opt;
    body_opt.n_sigma = 2 * n;
    body_opt.n_delta = n;
    body_opt.n_measures = 2 * n;
    body_opt.seed = seed;
    body_opt.workers = workers;
    body_opt.ks_threshold_override = 0.02;
    if (extra_body) {
      reports.push_back(theorem_end_to_end_check(*extra_body, extra_body->dim(), body_opt));
    } else {
      reports.push_back(
          theorem_end_to_end_check(ConvexSphericalBody::orthant(3), 3, body_opt));
    }
  }
  return reports;
}

}  // namespace spherechord
