#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spherechord/analytic.hpp"
#include "spherechord/geometry.hpp"
#include "spherechord/stats.hpp"

namespace spherechord {

struct CheckConfig {
  std::int64_t n = 100000;
  std::uint64_t seed = 1;
  int workers = 1;
};

// MC hit frequency of Haar 2-planes against |dK| / omega_{d-1}.
// For caps the expected value is (sin r)^{d-2}; for bodies pass the known
// boundary area, or <= 0 to fall back to the facet-sampling estimate (its
// standard error is folded into the tolerance).
VerificationReport crofton_hit_check(const SphericalCap& cap, int d, const CheckConfig& cfg);
VerificationReport crofton_hit_check(const ConvexSphericalBody& body, int d,
                                     const CheckConfig& cfg, double known_boundary_area = 0.0);

// MC mean of the chord angle (misses count 0) against (2 pi / omega_d) |K|.
VerificationReport crofton_mean_chord_check(const SphericalCap& cap, int d, const CheckConfig& cfg);
VerificationReport crofton_mean_chord_check(const ConvexSphericalBody& body, int d,
                                            const CheckConfig& cfg, double known_volume = 0.0);

// Blaschke-Petkantschin specialized to k = 2 and the indicator of K x K:
// |K|^2 = 2 b_{d,2} E[1{hit} G_{d-2}(alpha(K cap L))].
VerificationReport bp_identity_check(const SphericalCap& cap, int d, const CheckConfig& cfg);

// KS between empirical chord samples and 1 - cap_sigma_survival.
VerificationReport cap_sigma_cdf_check(const SphericalCap& cap, int d, const CheckConfig& cfg);

struct TheoremCheckOptions {
  std::int64_t n_sigma = 200000;
  std::int64_t n_delta = 100000;
  std::int64_t n_measures = 200000;
  int grid_points = 2001;
  std::uint64_t seed = 1;
  int workers = 1;
  double ks_threshold_override = 0.0;  // 0 -> statistical default
};

// Pipeline A: sigma CDF (analytic or sampled) -> transform -> density ->
// CDF. Pipeline B: empirical CDF of Delta samples. Compared by KS.
VerificationReport theorem_end_to_end_check(const SphericalCap& cap, int d,
                                            bool analytic_sigma,
                                            const TheoremCheckOptions& opt);
VerificationReport theorem_end_to_end_check(const ConvexSphericalBody& body, int d,
                                            const TheoremCheckOptions& opt);

// Named suites: "default", "crofton", "bp", "theorem", "cap-sigma".
// `extra_body` replaces the built-in orthant in the general-body checks.
// Throws std::invalid_argument on an unknown suite name.
std::vector<VerificationReport> run_suite(const std::string& suite, std::int64_t n,
                                          std::uint64_t seed, int workers,
                                          const std::optional<ConvexSphericalBody>& extra_body);

}  // namespace spherechord
