#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spherechord/geometry.hpp"
#include "spherechord/rng.hpp"

namespace spherechord {

// Haar-uniform element of G_{d,2}: two independent Gaussian vectors,
// orthonormalized. Nearly dependent draws are resampled.
TwoPlane sample_two_plane(int d, RngStream& rng);

// Uniform sampler on {x : dist(x, center) <= radius}. Unlike SphericalCap
// the radius may reach pi/2 and beyond (bounding caps are sometimes a full
// hemisphere). The polar angle is drawn by inverse CDF on a 4096-knot table
// of the sin-power antiderivative, refined by bisection to 1e-12.
class PolarCapSampler {
 public:
  PolarCapSampler(Vector center, double radius, int d);

  UnitVector operator()(RngStream& rng) const;
  double polar_angle_from_uniform(double u) const;
  double cap_volume() const;  // omega_{d-1} F_{d-2}(radius)
  double radius() const { return radius_; }

 private:
  Vector center_;
  double radius_;
  int d_;
  std::vector<double> knots_;
  std::vector<double> cdf_;
};

// Uniform w.r.t. spherical Lebesgue measure on the cap: polar angle from
// the center has density ~ sin^{d-2} on [0, r] (inverse CDF on the
// sin-power antiderivative, bisection-refined to 1e-12), direction in the
// center's orthogonal complement is uniform.
UnitVector sample_point_in_cap(const SphericalCap& cap, int d, RngStream& rng);
// Rejection from the body's bounding cap.
UnitVector sample_point_in_body(const ConvexSphericalBody& body, int d, RngStream& rng);

struct PointBatch {
  std::vector<UnitVector> points;
  std::int64_t n_attempted = 0;
};

PointBatch sample_points_in_cap(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng);
PointBatch sample_points_in_body(const ConvexSphericalBody& body, int d, std::int64_t n, RngStream& rng);

// One draw of sigma(K): Haar 2-planes until one hits, then the chord length.
double sample_sigma(const SphericalCap& cap, int d, RngStream& rng);
double sample_sigma(const ConvexSphericalBody& body, int d, RngStream& rng);

// One draw of Delta(K): geodesic distance of two independent uniform points.
double sample_delta(const SphericalCap& cap, int d, RngStream& rng);
double sample_delta(const ConvexSphericalBody& body, int d, RngStream& rng);

// Batch drivers; n_attempted counts plane draws (sigma) or rejection
// proposals (delta over bodies).
SampleBatch sample_sigma_batch(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng);
SampleBatch sample_sigma_batch(const ConvexSphericalBody& body, int d, std::int64_t n, RngStream& rng);
SampleBatch sample_delta_batch(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng);
SampleBatch sample_delta_batch(const ConvexSphericalBody& body, int d, std::int64_t n, RngStream& rng);

// Deterministic fan-out: worker w draws from RngStream(seed, w) and results
// are concatenated in worker order, so output depends only on (seed, workers).
SampleBatch sample_sigma_parallel(const SphericalCap& cap, int d, std::int64_t n,
                                  std::uint64_t seed, int workers = 1);
SampleBatch sample_sigma_parallel(const ConvexSphericalBody& body, int d, std::int64_t n,
                                  std::uint64_t seed, int workers = 1);
SampleBatch sample_delta_parallel(const SphericalCap& cap, int d, std::int64_t n,
                                  std::uint64_t seed, int workers = 1);
SampleBatch sample_delta_parallel(const ConvexSphericalBody& body, int d, std::int64_t n,
                                  std::uint64_t seed, int workers = 1);

// Evaluates fn on n Haar planes, sharded over workers as above.
std::vector<double> map_haar_planes(int d, std::int64_t n, std::uint64_t seed, int workers,
                                    const std::function<double(const TwoPlane&)>& fn);

}  // namespace spherechord
