#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace spherechord {

using Vector = Eigen::VectorXd;

class UnsupportedBodyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rejection sampler's acceptance (or a chord sampler's hit rate) fell
// below its floor; the bounding cap is too loose for this body.
class EfficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kUnitTol = 1e-12;
inline constexpr double kMembershipSlack = 1e-12;

// omega_d = |S^{d-1}| = 2 pi^{d/2} / Gamma(d/2) = d kappa_d
double sphere_surface_area(int d);
// kappa_d = |B^d| = pi^{d/2} / Gamma(d/2 + 1)
double ball_volume(int d);
// b_{d,2} = omega_d omega_{d-1} / (4 pi); equals the product form
// (omega_{d-1} omega_d) / (omega_1 omega_2).
double bp_constant(int d);

// Direction on S^{d-1}. Normalized on construction; throws on zero or
// non-finite input.
class UnitVector {
 public:
  explicit UnitVector(Vector coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const Vector& vec() const { return coords_; }
  double dot(const UnitVector& other) const;

 private:
  Vector coords_;
};

// Geodesic distance arccos<x,y> in [0, pi]; inner product clamped to [-1, 1]
// so numerically equal/antipodal inputs stay finite.
double spherical_distance(const UnitVector& x, const UnitVector& y);

// Cap of spherical radius r about a center direction; requires 0 < r < pi/2.
class SphericalCap {
 public:
  SphericalCap(UnitVector center, double radius);

  const UnitVector& center() const { return center_; }
  double radius() const { return radius_; }
  int dim() const { return center_.dim(); }

 private:
  UnitVector center_;
  double radius_;
};

// |K| = omega_{d-1} int_0^r sin^{d-2}
double cap_volume(const SphericalCap& cap, int d);
// |dK| = omega_{d-1} (sin r)^{d-2}
double cap_boundary_area(const SphericalCap& cap, int d);

// 2-dimensional linear subspace carried as an orthonormal pair.
class TwoPlane {
 public:
  TwoPlane(UnitVector u, UnitVector v);

  const UnitVector& u() const { return u_; }
  const UnitVector& v() const { return v_; }
  int dim() const { return u_.dim(); }

  // Norm of the projection of e onto the plane.
  double projection_norm(const UnitVector& e) const;

 private:
  UnitVector u_;
  UnitVector v_;
};

struct BoundingCap {
  Vector center;
  double radius;
};

// Intersection of S^{d-1} with the line-free cone {x : <n_i, x> >= 0}.
// The constructor requires the witness to satisfy every constraint
// strictly and certifies line-freeness with it: the exact minimum of
// <interior_point, x> over the body (KKT candidates over active subsets)
// must be positive. The same enumeration yields the tight bounding cap.
class ConvexSphericalBody {
 public:
  ConvexSphericalBody(std::vector<UnitVector> normals, UnitVector interior_point);

  static ConvexSphericalBody orthant(int d);

  const std::vector<UnitVector>& normals() const { return normals_; }
  const UnitVector& interior_point() const { return interior_; }
  int dim() const { return interior_.dim(); }
  const BoundingCap& bounding() const { return bounding_; }

 private:
  std::vector<UnitVector> normals_;
  UnitVector interior_;
  BoundingCap bounding_;
};

bool body_membership(const ConvexSphericalBody& body, const UnitVector& x);

struct ChordArc {
  double length = 0.0;
  bool hit = false;
};

// Chord of the cap cut by the plane's great circle: with p the projected
// norm of the center, hit iff p >= cos r and length = 2 arccos(cos r / p).
ChordArc chord_arc(const SphericalCap& cap, const TwoPlane& plane);
// Chord of a halfspace body: each constraint restricts the circle to a
// closed half-circle; the feasible set is their intersection, a single arc
// of length <= pi for line-free bodies (asserted).
ChordArc chord_arc(const ConvexSphericalBody& body, const TwoPlane& plane);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct BodyMeasures {
  McEstimate volume;
  McEstimate boundary_area;
  std::int64_t n = 0;
};

// Volume by rejection sampling inside the bounding cap; boundary area by
// inverting the Crofton hitting measure, |dK| = omega_{d-1} P(L hits K)
// over Haar 2-planes L.
BodyMeasures body_measures_mc(const ConvexSphericalBody& body, int d,
                              std::int64_t n, std::uint64_t seed, int workers = 1);

// Facet-by-facet boundary estimate: each facet lives on the great subsphere
// normal to n_i (total area omega_{d-1}); sample it uniformly and count the
// fraction inside the other constraints. Independent of the 2-plane route.
McEstimate body_boundary_area_mc(const ConvexSphericalBody& body, int d,
                                 std::int64_t n, std::uint64_t seed);

// Exact measures of the coordinate orthant: |K| = omega_d / 2^d,
// |dK| = d omega_{d-1} / 2^{d-1}.
double orthant_volume(int d);
double orthant_boundary_area(int d);

}  // namespace spherechord
