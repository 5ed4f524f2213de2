#include "spherechord/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "spherechord/analytic.hpp"
#include "spherechord/rng.hpp"
#include "spherechord/samplers.hpp"

namespace spherechord {

namespace {

constexpr double kPi = std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

}  // namespace

double sphere_surface_area(int d) {
  if (d <= 0) throw std::domain_error("sphere_surface_area: d must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

double ball_volume(int d) {
  if (d <= 0) throw std::domain_error("ball_volume: d must be >= 1");
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double bp_constant(int d) {
  if (d < 3) throw std::domain_error("bp_constant: d must be >= 3");
  return sphere_surface_area(d) * sphere_surface_area(d - 1) / (4.0 * kPi);
}

UnitVector::UnitVector(Vector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1 || !coords_.allFinite()) {
    throw std::domain_error("UnitVector: coordinates must be finite and non-empty");
  }
  const double norm = coords_.norm();
  if (norm < 1e-300) throw std::domain_error("UnitVector: zero vector");
  coords_ /= norm;
}

double UnitVector::dot(const UnitVector& other) const {
  if (other.dim() != dim()) throw std::domain_error("UnitVector: dimension mismatch");
  return coords_.dot(other.coords_);
}

double spherical_distance(const UnitVector& x, const UnitVector& y) {
  return clamped_acos(x.dot(y));
}

SphericalCap::SphericalCap(UnitVector center, double radius)
    : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || !(radius < kPi / 2.0)) {
    throw std::domain_error("SphericalCap: radius must lie in (0, pi/2)");
  }
  if (center_.dim() < 3) throw std::domain_error("SphericalCap: dimension must be >= 3");
}

double cap_volume(const SphericalCap& cap, int d) {
  if (d != cap.dim()) throw std::domain_error("cap_volume: dimension mismatch");
  return sphere_surface_area(d - 1) * sin_power_antiderivative(d - 2, cap.radius());
}

double cap_boundary_area(const SphericalCap& cap, int d) {
  if (d != cap.dim()) throw std::domain_error("cap_boundary_area: dimension mismatch");
  return sphere_surface_area(d - 1) * std::pow(std::sin(cap.radius()), d - 2);
}

TwoPlane::TwoPlane(UnitVector u, UnitVector v) : u_(std::move(u)), v_(std::move(v)) {
  if (u_.dim() != v_.dim()) throw std::domain_error("TwoPlane: dimension mismatch");
  if (u_.dim() < 3) throw std::domain_error("TwoPlane: dimension must be >= 3");
  if (std::abs(u_.dot(v_)) > kUnitTol) {
    throw std::domain_error("TwoPlane: basis is not orthonormal");
  }
}

double TwoPlane::projection_norm(const UnitVector& e) const {
  if (e.dim() != dim()) throw std::domain_error("TwoPlane: dimension mismatch");
  return std::hypot(e.dot(u_), e.dot(v_));
}

namespace {

// KKT candidates for extremizing <c, x> over the body: for each active
// subset A, x is +-(projection of c onto the nullspace of the active
// normals), plus the nullspace basis directions themselves when the
// projection degenerates or the subset pins a vertex.
struct SeparationResult {
  double min_dot;
  bool feasible_candidate_found;
};

bool feasible(const std::vector<UnitVector>& normals, const Vector& x, double slack) {
  for (const auto& n : normals) {
    if (n.vec().dot(x) < -slack) return false;
  }
  return true;
}

SeparationResult min_dot_over_body(const std::vector<UnitVector>& normals,
                                   const Vector& c) {
  const int d = static_cast<int>(c.size());
  const int k = static_cast<int>(normals.size());
  const double slack = 1e-9;

  // Budget the active-set enumeration.
  double subsets = 0.0;
  {
    double level = 1.0;
    for (int j = 0; j <= std::min(k, d - 1); ++j) {
      subsets += level;
      level *= static_cast<double>(k - j) / (j + 1);
    }
  }
  if (subsets > 3e5) {
    throw UnsupportedBodyError(
        "ConvexSphericalBody: too many constraints for exact bounding-cap enumeration");
  }

  SeparationResult result{1.0, false};
  auto consider = [&](const Vector& x) {
    if (feasible(normals, x, slack)) {
      result.min_dot = std::min(result.min_dot, c.dot(x));
      result.feasible_candidate_found = true;
    }
  };

  std::vector<int> subset;
  auto process_subset = [&]() {
    Eigen::MatrixXd active(static_cast<int>(subset.size()), d);
    for (size_t i = 0; i < subset.size(); ++i) active.row(static_cast<int>(i)) = normals[subset[i]].vec();
    Eigen::MatrixXd kernel;
    if (subset.empty()) {
      kernel = Eigen::MatrixXd::Identity(d, d);
    } else {
      Eigen::FullPivLU<Eigen::MatrixXd> lu(active);
      lu.setThreshold(1e-10);
      kernel = lu.kernel();
      if (kernel.cols() == 1 && kernel.col(0).norm() < 1e-12) return;  // full rank, no nullspace
    }
    // Orthonormalize the kernel basis.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, kernel.cols());
    const Vector proj = q * (q.transpose() * c);
    if (proj.norm() > 1e-12) {
      consider(proj.normalized());
      consider(Vector(-proj.normalized()));
    }
    // Basis directions cover the degenerate projection and vertex cases.
    for (int j = 0; j < q.cols(); ++j) {
      consider(Vector(q.col(j)));
      consider(Vector(-q.col(j)));
    }
  };

  // Enumerate subsets of size 0..d-1.
  const int max_size = std::min(k, d - 1);
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    process_subset();
    if (remaining == 0) return;
    for (int i = start; i < k; ++i) {
      subset.push_back(i);
      rec(i + 1, remaining - 1);
      subset.pop_back();
    }
  };
  rec(0, max_size);
  return result;
}

}  // namespace

ConvexSphericalBody::ConvexSphericalBody(std::vector<UnitVector> normals,
                                         UnitVector interior_point)
    : normals_(std::move(normals)),
      interior_(std::move(interior_point)),
      bounding_{interior_.vec(), 0.0} {
  if (normals_.empty()) throw std::domain_error("ConvexSphericalBody: no constraints");
  const int d = interior_.dim();
  if (d < 3) throw std::domain_error("ConvexSphericalBody: dimension must be >= 3");
  for (const auto& n : normals_) {
    if (n.dim() != d) throw std::domain_error("ConvexSphericalBody: dimension mismatch");
    if (n.vec().dot(interior_.vec()) <= kMembershipSlack) {
      throw std::domain_error(
          "ConvexSphericalBody: interior point does not satisfy all constraints strictly");
    }
  }
  const SeparationResult sep = min_dot_over_body(normals_, interior_.vec());
  if (sep.min_dot <= 1e-12) {
    throw std::domain_error(
        "ConvexSphericalBody: interior witness does not certify a line-free cone "
        "(a body direction is at or beyond quarter turn from it)");
  }
  bounding_.radius = std::min(clamped_acos(sep.min_dot) + 1e-9, kPi / 2.0);
}

ConvexSphericalBody ConvexSphericalBody::orthant(int d) {
  if (d < 3) throw std::domain_error("orthant: d must be >= 3");
  std::vector<UnitVector> normals;
  normals.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1.0;
    normals.emplace_back(std::move(e));
  }
  return ConvexSphericalBody(std::move(normals), UnitVector(Vector::Ones(d)));
}

bool body_membership(const ConvexSphericalBody& body, const UnitVector& x) {
  if (x.dim() != body.dim()) throw std::domain_error("body_membership: dimension mismatch");
  for (const auto& n : body.normals()) {
    if (n.vec().dot(x.vec()) < -kMembershipSlack) return false;
  }
  return true;
}

ChordArc chord_arc(const SphericalCap& cap, const TwoPlane& plane) {
  if (cap.dim() != plane.dim()) throw std::domain_error("chord_arc: dimension mismatch");
  const double p = plane.projection_norm(cap.center());
  const double cr = std::cos(cap.radius());
  if (p < cr) return {0.0, false};
  return {2.0 * clamped_acos(cr / p), true};
}

ChordArc chord_arc(const ConvexSphericalBody& body, const TwoPlane& plane) {
  if (body.dim() != plane.dim()) throw std::domain_error("chord_arc: dimension mismatch");
  constexpr double kTwoPi = 2.0 * kPi;

  // Feasible angles, maintained as disjoint intervals of [0, 2pi).
  std::vector<std::pair<double, double>> arcs{{0.0, kTwoPi}};
  for (const auto& n : body.normals()) {
    const double a = n.dot(plane.u());
    const double b = n.dot(plane.v());
    if (std::hypot(a, b) <= 1e-13) continue;  // constraint inactive on this plane
    // <n, x(phi)> >= 0 is the closed half-circle centered on psi.
    const double psi = std::atan2(b, a);
    double lo = psi - kPi / 2.0;
    if (lo < 0.0) lo += kTwoPi;
    const double hi = lo + kPi;

    std::vector<std::pair<double, double>> pieces;
    if (hi <= kTwoPi) {
      pieces.emplace_back(lo, hi);
    } else {
      pieces.emplace_back(lo, kTwoPi);
      pieces.emplace_back(0.0, hi - kTwoPi);
    }
    std::vector<std::pair<double, double>> next;
    for (const auto& arc : arcs) {
      for (const auto& piece : pieces) {
        const double s = std::max(arc.first, piece.first);
        const double e = std::min(arc.second, piece.second);
        if (e - s > 1e-15) next.emplace_back(s, e);
      }
    }
    arcs = std::move(next);
    if (arcs.empty()) return {0.0, false};
  }

  double total = 0.0;
  for (const auto& arc : arcs) total += arc.second - arc.first;

  // Count maximal arcs after gluing across the 0/2pi seam.
  std::sort(arcs.begin(), arcs.end());
  int pieces = 1;
  for (size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].first - arcs[i - 1].second > 1e-9) ++pieces;
  }
  if (!arcs.empty() && pieces > 1 && arcs.front().first < 1e-9 &&
      kTwoPi - arcs.back().second < 1e-9) {
    --pieces;  // wraps around the seam
  }
  if (pieces > 1 || total > kPi + 1e-9) {
    throw std::logic_error(
        "chord_arc: intersection is not a single arc of length <= pi; body is not line-free");
  }
  return {total, total > 0.0};
}

BodyMeasures body_measures_mc(const ConvexSphericalBody& body, int d, std::int64_t n,
                              std::uint64_t seed, int workers) {
  if (d != body.dim()) throw std::domain_error("body_measures_mc: dimension mismatch");
  if (n <= 0) throw std::domain_error("body_measures_mc: n must be positive");
  if (workers < 1) throw std::domain_error("body_measures_mc: workers must be >= 1");

  const PolarCapSampler bound(body.bounding().center, body.bounding().radius, d);
  const double bound_volume = bound.cap_volume();

  // Volume: accepted fraction of uniform proposals in the bounding cap.
  std::int64_t accepted = 0;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t count = n / workers + (w < n % workers ? 1 : 0);
    RngStream rng(seed, static_cast<std::uint64_t>(w));
    for (std::int64_t i = 0; i < count; ++i) {
      if (body_membership(body, bound(rng))) ++accepted;
    }
  }
  const double p = static_cast<double>(accepted) / static_cast<double>(n);
  McEstimate volume{bound_volume * p,
                    bound_volume * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n))};

  // Boundary: Crofton inverted, |dK| = omega_{d-1} P(hit).
  const double omega = sphere_surface_area(d - 1);
  std::vector<double> hits = map_haar_planes(
      d, n, seed + 0x9e3779b97f4a7c15ULL, workers,
      [&](const TwoPlane& plane) { return chord_arc(body, plane).hit ? 1.0 : 0.0; });
  double q = 0.0;
  for (double h : hits) q += h;
  q /= static_cast<double>(n);
  McEstimate boundary{omega * q,
                      omega * std::sqrt(std::max(q * (1.0 - q), 0.0) / static_cast<double>(n))};

  return BodyMeasures{volume, boundary, n};
}

McEstimate body_boundary_area_mc(const ConvexSphericalBody& body, int d, std::int64_t n,
                                 std::uint64_t seed) {
  if (d != body.dim()) throw std::domain_error("body_boundary_area_mc: dimension mismatch");
  if (n <= 0) throw std::domain_error("body_boundary_area_mc: n must be positive");
  const double omega = sphere_surface_area(d - 1);
  const auto& normals = body.normals();

  double total = 0.0;
  double var = 0.0;
  for (size_t i = 0; i < normals.size(); ++i) {
    // Orthonormal basis of the facet's great subsphere.
    Eigen::MatrixXd m(d, 1);
    m.col(0) = normals[i].vec();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd basis = q.rightCols(d - 1);

    RngStream rng(seed, static_cast<std::uint64_t>(i));
    std::int64_t inside = 0;
    for (std::int64_t s = 0; s < n; ++s) {
      Vector g = rng.gaussian(d - 1);
      Vector x = basis * g;
      x.normalize();
      bool ok = true;
      for (size_t j = 0; j < normals.size(); ++j) {
        if (j == i) continue;
        if (normals[j].vec().dot(x) < -kMembershipSlack) {
          ok = false;
          break;
        }
      }
      if (ok) ++inside;
    }
    const double frac = static_cast<double>(inside) / static_cast<double>(n);
    total += omega * frac;
    var += omega * omega * frac * (1.0 - frac) / static_cast<double>(n);
  }
  return {total, std::sqrt(var)};
}

double orthant_volume(int d) { return sphere_surface_area(d) / std::pow(2.0, d); }

double orthant_boundary_area(int d) {
  return d * sphere_surface_area(d - 1) / std::pow(2.0, d - 1);
}

}  // namespace spherechord
