#include "spherechord/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "spherechord/analytic.hpp"

namespace spherechord {

namespace {

// Acceptance floors; probed once this many attempts have accumulated.
constexpr std::int64_t kPointProbeAttempts = 200000;
constexpr double kPointAcceptanceFloor = 1e-4;
constexpr std::int64_t kPlaneProbeAttempts = 1000000;
constexpr double kHitRateFloor = 1e-5;

void check_point_acceptance(std::int64_t attempted, std::int64_t accepted) {
  if (attempted >= kPointProbeAttempts &&
      static_cast<double>(accepted) < kPointAcceptanceFloor * static_cast<double>(attempted)) {
    throw EfficiencyError(
        "sample_point_in_body: acceptance rate below 1e-4; the bounding cap is too loose");
  }
}

void check_hit_rate(std::int64_t attempted, std::int64_t hits) {
  if (attempted >= kPlaneProbeAttempts &&
      static_cast<double>(hits) < kHitRateFloor * static_cast<double>(attempted)) {
    throw EfficiencyError("sample_sigma: 2-plane hit rate below 1e-5 for this body");
  }
}

// Deterministic fan-out over worker streams; parts merge in worker order.
template <typename Task>
SampleBatch run_sharded(std::int64_t n, std::uint64_t seed, int workers, Task&& task) {
  if (n < 0) throw std::domain_error("sample batch: n must be >= 0");
  if (workers < 1) throw std::domain_error("sample batch: workers must be >= 1");
  std::vector<SampleBatch> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run_worker = [&](int w) {
    try {
      const std::int64_t count = n / workers + (w < n % workers ? 1 : 0);
      RngStream rng(seed, static_cast<std::uint64_t>(w));
      parts[w] = task(count, rng);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SampleBatch merged;
  for (auto& part : parts) {
    merged.values.insert(merged.values.end(), part.values.begin(), part.values.end());
    merged.n_attempted += part.n_attempted;
  }
  return merged;
}

SampleBatch sigma_batch_impl(int d, std::int64_t n, RngStream& rng,
                             const std::function<ChordArc(const TwoPlane&)>& chord) {
  SampleBatch batch;
  batch.values.reserve(static_cast<std::size_t>(n));
  while (batch.n_accepted() < n) {
    const TwoPlane plane = sample_two_plane(d, rng);
    ++batch.n_attempted;
    const ChordArc arc = chord(plane);
    if (arc.hit) {
      batch.values.push_back(arc.length);
    } else {
      check_hit_rate(batch.n_attempted, batch.n_accepted());
    }
  }
  return batch;
}

}  // namespace

PolarCapSampler::PolarCapSampler(Vector center, double radius, int d)
    : center_(std::move(center)), radius_(radius), d_(d) {
  if (d < 3) throw std::domain_error("PolarCapSampler: d must be >= 3");
  if (static_cast<int>(center_.size()) != d) {
    throw std::domain_error("PolarCapSampler: dimension mismatch");
  }
  if (!(radius > 0.0) || !(radius <= std::acos(-1.0))) {
    throw std::domain_error("PolarCapSampler: radius must lie in (0, pi]");
  }
  center_.normalize();
  constexpr int kKnots = 4096;
  knots_.resize(kKnots + 1);
  cdf_.resize(kKnots + 1);
  for (int i = 0; i <= kKnots; ++i) {
    knots_[i] = radius * static_cast<double>(i) / kKnots;
    cdf_[i] = sin_power_antiderivative(d - 2, knots_[i]);
  }
}

double PolarCapSampler::polar_angle_from_uniform(double u) const {
  const double target = u * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  std::size_t hi_idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                             cdf_.size() - 1);
  if (hi_idx == 0) hi_idx = 1;
  double lo = knots_[hi_idx - 1];
  double hi = knots_[hi_idx];
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (sin_power_antiderivative(d_ - 2, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

UnitVector PolarCapSampler::operator()(RngStream& rng) const {
  const double theta = polar_angle_from_uniform(rng.uniform());
  // Uniform direction in the center's orthogonal complement.
  Vector w(d_);
  double norm = 0.0;
  do {
    w = rng.gaussian(d_);
    w -= w.dot(center_) * center_;
    norm = w.norm();
  } while (norm < 1e-12);
  w /= norm;
  return UnitVector(std::cos(theta) * center_ + std::sin(theta) * w);
}

double PolarCapSampler::cap_volume() const {
  return sphere_surface_area(d_ - 1) * cdf_.back();
}

TwoPlane sample_two_plane(int d, RngStream& rng) {
  if (d < 3) throw std::domain_error("sample_two_plane: d must be >= 3");
  Vector u = rng.gaussian(d);
  double nu = u.norm();
  while (nu < 1e-12) {
    u = rng.gaussian(d);
    nu = u.norm();
  }
  u /= nu;
  Vector w(d);
  double nw = 0.0;
  do {
    w = rng.gaussian(d);
    w -= w.dot(u) * u;
    nw = w.norm();
  } while (nw < 1e-8);
  w /= nw;
  return TwoPlane(UnitVector(std::move(u)), UnitVector(std::move(w)));
}

UnitVector sample_point_in_cap(const SphericalCap& cap, int d, RngStream& rng) {
  if (d != cap.dim()) throw std::domain_error("sample_point_in_cap: dimension mismatch");
  const PolarCapSampler sampler(cap.center().vec(), cap.radius(), d);
  return sampler(rng);
}

PointBatch sample_points_in_cap(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng) {
  if (d != cap.dim()) throw std::domain_error("sample_points_in_cap: dimension mismatch");
  const PolarCapSampler sampler(cap.center().vec(), cap.radius(), d);
  PointBatch batch;
  batch.points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) batch.points.push_back(sampler(rng));
  batch.n_attempted = n;
  return batch;
}

namespace {

PointBatch body_points_impl(const ConvexSphericalBody& body, int d, std::int64_t n,
                            RngStream& rng) {
  const PolarCapSampler bound(body.bounding().center, body.bounding().radius, d);
  PointBatch batch;
  batch.points.reserve(static_cast<std::size_t>(n));
  while (static_cast<std::int64_t>(batch.points.size()) < n) {
    ++batch.n_attempted;
    UnitVector x = bound(rng);
    if (body_membership(body, x)) {
      batch.points.push_back(std::move(x));
    } else {
      check_point_acceptance(batch.n_attempted, static_cast<std::int64_t>(batch.points.size()));
    }
  }
  return batch;
}

}  // namespace

UnitVector sample_point_in_body(const ConvexSphericalBody& body, int d, RngStream& rng) {
  if (d != body.dim()) throw std::domain_error("sample_point_in_body: dimension mismatch");
  return std::move(body_points_impl(body, d, 1, rng).points.front());
}

PointBatch sample_points_in_body(const ConvexSphericalBody& body, int d, std::int64_t n,
                                 RngStream& rng) {
  if (d != body.dim()) throw std::domain_error("sample_points_in_body: dimension mismatch");
  return body_points_impl(body, d, n, rng);
}

double sample_sigma(const SphericalCap& cap, int d, RngStream& rng) {
  if (d != cap.dim()) throw std::domain_error("sample_sigma: dimension mismatch");
  std::int64_t attempts = 0;
  for (;;) {
    const TwoPlane plane = sample_two_plane(d, rng);
    ++attempts;
    const ChordArc arc = chord_arc(cap, plane);
    if (arc.hit) return arc.length;
    check_hit_rate(attempts, 0);
  }
}

double sample_sigma(const ConvexSphericalBody& body, int d, RngStream& rng) {
  if (d != body.dim()) throw std::domain_error("sample_sigma: dimension mismatch");
  std::int64_t attempts = 0;
  for (;;) {
    const TwoPlane plane = sample_two_plane(d, rng);
    ++attempts;
    const ChordArc arc = chord_arc(body, plane);
    if (arc.hit) return arc.length;
    check_hit_rate(attempts, 0);
  }
}

double sample_delta(const SphericalCap& cap, int d, RngStream& rng) {
  const UnitVector x = sample_point_in_cap(cap, d, rng);
  const UnitVector y = sample_point_in_cap(cap, d, rng);
  return spherical_distance(x, y);
}

double sample_delta(const ConvexSphericalBody& body, int d, RngStream& rng) {
  const UnitVector x = sample_point_in_body(body, d, rng);
  const UnitVector y = sample_point_in_body(body, d, rng);
  return spherical_distance(x, y);
}

SampleBatch sample_sigma_batch(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng) {
  if (d != cap.dim()) throw std::domain_error("sample_sigma_batch: dimension mismatch");
  return sigma_batch_impl(d, n, rng, [&](const TwoPlane& p) { return chord_arc(cap, p); });
}

SampleBatch sample_sigma_batch(const ConvexSphericalBody& body, int d, std::int64_t n,
                               RngStream& rng) {
  if (d != body.dim()) throw std::domain_error("sample_sigma_batch: dimension mismatch");
  return sigma_batch_impl(d, n, rng, [&](const TwoPlane& p) { return chord_arc(body, p); });
}

SampleBatch sample_delta_batch(const SphericalCap& cap, int d, std::int64_t n, RngStream& rng) {
  if (d != cap.dim()) throw std::domain_error("sample_delta_batch: dimension mismatch");
  const PointBatch pts = sample_points_in_cap(cap, d, 2 * n, rng);
  SampleBatch batch;
  batch.n_attempted = pts.n_attempted;
  batch.values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    batch.values.push_back(spherical_distance(pts.points[2 * i], pts.points[2 * i + 1]));
  }
  return batch;
}

SampleBatch sample_delta_batch(const ConvexSphericalBody& body, int d, std::int64_t n,
                               RngStream& rng) {
  if (d != body.dim()) throw std::domain_error("sample_delta_batch: dimension mismatch");
  const PointBatch pts = body_points_impl(body, d, 2 * n, rng);
  SampleBatch batch;
  batch.n_attempted = pts.n_attempted;
  batch.values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    batch.values.push_back(spherical_distance(pts.points[2 * i], pts.points[2 * i + 1]));
  }
  return batch;
}

SampleBatch sample_sigma_parallel(const SphericalCap& cap, int d, std::int64_t n,
                                  std::uint64_t seed, int workers) {
  return run_sharded(n, seed, workers, [&](std::int64_t count, RngStream& rng) {
    return sample_sigma_batch(cap, d, count, rng);
  });
}

SampleBatch sample_sigma_parallel(const ConvexSphericalBody& body, int d, std::int64_t n,
                                  std::uint64_t seed, int workers) {
  return run_sharded(n, seed, workers, [&](std::int64_t count, RngStream& rng) {
    return sample_sigma_batch(body, d, count, rng);
  });
}

SampleBatch sample_delta_parallel(const SphericalCap& cap, int d, std::int64_t n,
                                  std::uint64_t seed, int workers) {
  return run_sharded(n, seed, workers, [&](std::int64_t count, RngStream& rng) {
    return sample_delta_batch(cap, d, count, rng);
  });
}

SampleBatch sample_delta_parallel(const ConvexSphericalBody& body, int d, std::int64_t n,
                                  std::uint64_t seed, int workers) {
  return run_sharded(n, seed, workers, [&](std::int64_t count, RngStream& rng) {
    return sample_delta_batch(body, d, count, rng);
  });
}

std::vector<double> map_haar_planes(int d, std::int64_t n, std::uint64_t seed, int workers,
                                    const std::function<double(const TwoPlane&)>& fn) {
  SampleBatch batch = run_sharded(n, seed, workers, [&](std::int64_t count, RngStream& rng) {
    SampleBatch part;
    part.values.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
      part.values.push_back(fn(sample_two_plane(d, rng)));
      ++part.n_attempted;
    }
    return part;
  });
  return std::move(batch.values);
}

}  // namespace spherechord
