#include "spherechord/geometry.hpp"

#include <cmath>
#include <gtest/gtest.h>

#include "spherechord/analytic.hpp"
#include "test_util.hpp"

namespace spherechord {
namespace {

using testing::axis_cap;
using testing::axis_vector;
using testing::kPi;
using testing::random_rotation;
using testing::simpson_oracle;

TEST(Constants, SphereAreasAndBallVolumes) {
  EXPECT_NEAR(sphere_surface_area(2), 2.0 * kPi, 1e-12);
  EXPECT_NEAR(sphere_surface_area(3), 4.0 * kPi, 1e-12);
  EXPECT_NEAR(sphere_surface_area(4), 2.0 * kPi * kPi, 1e-12);
  EXPECT_NEAR(ball_volume(1), 2.0, 1e-12);
  EXPECT_NEAR(ball_volume(2), kPi, 1e-12);
  EXPECT_NEAR(ball_volume(3), 4.0 * kPi / 3.0, 1e-12);
  EXPECT_THROW(sphere_surface_area(0), std::domain_error);
  EXPECT_THROW(ball_volume(-1), std::domain_error);
}

TEST(Constants, OmegaEqualsDTimesKappa) {
  for (int d = 1; d <= 20; ++d) {
    const double omega = sphere_surface_area(d);
    EXPECT_NEAR(omega, d * ball_volume(d), 1e-12 * omega) << "d=" << d;
  }
}

TEST(Constants, BpConstantMatchesProductDefinition) {
  EXPECT_NEAR(bp_constant(3), 2.0 * kPi, 1e-12 * 2.0 * kPi);
  EXPECT_NEAR(bp_constant(4), 2.0 * kPi * kPi, 1e-12 * 2.0 * kPi * kPi);
  for (int d = 3; d <= 12; ++d) {
    // omega_{d-1} omega_d / (omega_1 omega_2)
    const double product = sphere_surface_area(d - 1) * sphere_surface_area(d) /
                           (sphere_surface_area(1) * sphere_surface_area(2));
    const double closed = bp_constant(d);
    EXPECT_NEAR(closed, product, 1e-12 * closed) << "d=" << d;
  }
  EXPECT_THROW(bp_constant(2), std::domain_error);
}

TEST(UnitVectorType, NormalizesAndRejectsDegenerate) {
  Vector v(3);
  v << 3.0, 0.0, 4.0;
  const UnitVector u{std::move(v)};
  EXPECT_NEAR(u.vec().norm(), 1.0, 1e-15);
  EXPECT_THROW(UnitVector(Vector::Zero(3)), std::domain_error);
}

TEST(SphericalDistance, EndpointsAndOrthogonality) {
  const UnitVector x = axis_vector(4, 0);
  Vector mx = -x.vec();
  EXPECT_DOUBLE_EQ(spherical_distance(x, x), 0.0);
  EXPECT_DOUBLE_EQ(spherical_distance(x, UnitVector(std::move(mx))), kPi);
  EXPECT_DOUBLE_EQ(spherical_distance(x, axis_vector(4, 2)), kPi / 2.0);
  EXPECT_THROW(spherical_distance(x, axis_vector(3, 0)), std::domain_error);
}

TEST(CapType, RadiusRange) {
  EXPECT_THROW(SphericalCap(axis_vector(3, 2), 0.0), std::domain_error);
  EXPECT_THROW(SphericalCap(axis_vector(3, 2), kPi / 2.0), std::domain_error);
  EXPECT_NO_THROW(SphericalCap(axis_vector(3, 2), kPi / 2.0 - 1e-9));
}

TEST(CapVolume, ClosedFormsAndQuadrature) {
  // d=3: 2 pi (1 - cos r) exactly
  EXPECT_NEAR(cap_volume(axis_cap(3, kPi / 3.0), 3), kPi, 1e-13);
  EXPECT_NEAR(cap_volume(axis_cap(3, kPi / 2.0 - 1e-12), 3), 2.0 * kPi, 1e-9);
  // d=4, r=0.8: 4 pi (0.4 - sin(1.6)/4)
  EXPECT_NEAR(cap_volume(axis_cap(4, 0.8), 4), 1.8862951577061963508, 1e-12);
  // quadrature consistency, several (d, r)
  for (int d : {3, 4, 5, 6, 9}) {
    for (double r : {0.3, 0.7, 1.2}) {
      const double direct = cap_volume(axis_cap(d, r), d);
      const double quad = sphere_surface_area(d - 1) *
                          simpson_oracle([d](double t) { return std::pow(std::sin(t), d - 2); },
                                         0.0, r);
      EXPECT_NEAR(direct, quad, 1e-10) << "d=" << d << " r=" << r;
    }
  }
  EXPECT_GT(cap_volume(axis_cap(3, 0.9), 3), cap_volume(axis_cap(3, 0.5), 3));
}

TEST(CapBoundaryArea, ClosedForms) {
  EXPECT_NEAR(cap_boundary_area(axis_cap(3, kPi / 3.0), 3), kPi * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(cap_boundary_area(axis_cap(4, kPi / 2.0 - 1e-13), 4), 4.0 * kPi, 1e-9);
  EXPECT_NEAR(cap_boundary_area(axis_cap(5, 0.5), 5), 2.1751701537780439837, 1e-12);
}

TEST(BodyType, OrthantConstructionAndMembership) {
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  EXPECT_TRUE(body_membership(octant, octant.interior_point()));
  Vector anti = -octant.interior_point().vec();
  EXPECT_FALSE(body_membership(octant, UnitVector(std::move(anti))));
  // facet point: one coordinate zero, others positive
  Vector facet(3);
  facet << 0.0, 1.0, 1.0;
  EXPECT_TRUE(body_membership(octant, UnitVector(std::move(facet))));
  // bounding cap: farthest body points are the vertices e_i
  EXPECT_NEAR(octant.bounding().radius, std::acos(1.0 / std::sqrt(3.0)), 1e-6);
}

TEST(TwoPlaneType, RejectsDegenerateBasis) {
  Vector u(3), v(3);
  u << 1.0, 0.0, 0.0;
  v << std::sqrt(0.5), std::sqrt(0.5), 0.0;
  EXPECT_THROW(TwoPlane(UnitVector(u), UnitVector(v)), std::domain_error);
  EXPECT_THROW(TwoPlane(axis_vector(3, 0), axis_vector(4, 1)), std::domain_error);
}

TEST(BodyType, TooManyConstraintsForEnumeration) {
  // 40 gently perturbed normals around the witness in d = 10: the active-set
  // enumeration budget is blown well before certification can finish
  const int d = 10;
  RngStream rng(8);
  Vector c = Vector::Ones(d).normalized();
  std::vector<UnitVector> normals;
  for (int i = 0; i < 40; ++i) {
    normals.emplace_back(Vector(c + 0.1 * rng.gaussian(d)));
  }
  EXPECT_THROW(ConvexSphericalBody(std::move(normals), UnitVector(std::move(c))),
               UnsupportedBodyError);
}

TEST(BodyType, RejectsBadWitnessAndNonLineFree) {
  std::vector<UnitVector> normals;
  normals.push_back(axis_vector(3, 0));
  normals.push_back(axis_vector(3, 1));
  normals.push_back(axis_vector(3, 2));
  Vector outside(3);
  outside << -1.0, 1.0, 1.0;
  EXPECT_THROW(ConvexSphericalBody(normals, UnitVector(std::move(outside))),
               std::domain_error);

  // Two constraints in d=3 leave a lune containing antipodes: not line-free.
  std::vector<UnitVector> lune;
  lune.push_back(axis_vector(3, 0));
  lune.push_back(axis_vector(3, 1));
  Vector mid(3);
  mid << 1.0, 1.0, 0.0;
  EXPECT_THROW(ConvexSphericalBody(lune, UnitVector(std::move(mid))), std::domain_error);
}

TEST(ChordArcCap, DiametralAndMissAndOblique) {
  const SphericalCap cap = axis_cap(3, kPi / 3.0);
  // plane containing the center: p = 1, chord is the diameter 2r
  const TwoPlane diametral(axis_vector(3, 2), axis_vector(3, 0));
  const ChordArc diam = chord_arc(cap, diametral);
  EXPECT_TRUE(diam.hit);
  EXPECT_NEAR(diam.length, 2.0 * kPi / 3.0, 1e-12);

  // plane orthogonal to the center: p = 0 < cos r, miss
  const TwoPlane equatorial(axis_vector(3, 0), axis_vector(3, 1));
  const ChordArc miss = chord_arc(cap, equatorial);
  EXPECT_FALSE(miss.hit);
  EXPECT_DOUBLE_EQ(miss.length, 0.0);

  // plane with p = sqrt(3)/2: length = 2 arccos(1/sqrt 3)
  const double gamma = std::acos(std::sqrt(3.0) / 2.0);
  Vector tilted(3);
  tilted << std::sin(gamma), 0.0, std::cos(gamma);
  const TwoPlane oblique(UnitVector(std::move(tilted)), axis_vector(3, 1));
  const ChordArc chord = chord_arc(cap, oblique);
  EXPECT_TRUE(chord.hit);
  EXPECT_NEAR(chord.length, 1.9106332362490185563, 1e-12);
  // identity cos(length/2) * p = cos r
  EXPECT_NEAR(std::cos(0.5 * chord.length) * (std::sqrt(3.0) / 2.0), std::cos(kPi / 3.0),
              1e-12);
}

TEST(ChordArcCap, HitIdentityOnRandomPlanes) {
  RngStream rng(31);
  for (int d : {3, 5}) {
    const SphericalCap cap = axis_cap(d, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
      Vector a = rng.gaussian(d);
      a.normalize();
      Vector b = rng.gaussian(d);
      b -= b.dot(a) * a;
      b.normalize();
      const TwoPlane plane{UnitVector(a), UnitVector(b)};
      const ChordArc arc = chord_arc(cap, plane);
      const double p = plane.projection_norm(cap.center());
      if (arc.hit) {
        EXPECT_NEAR(std::cos(0.5 * arc.length) * p, std::cos(cap.radius()), 1e-12);
      } else {
        EXPECT_LT(p, std::cos(cap.radius()));
      }
    }
  }
}

TEST(ChordArcBody, OctantQuarterCircleAndMiss) {
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  // the xy great circle: z constraint inactive, quarter circle remains
  const TwoPlane equatorial(axis_vector(3, 0), axis_vector(3, 1));
  const ChordArc quarter = chord_arc(octant, equatorial);
  EXPECT_TRUE(quarter.hit);
  EXPECT_NEAR(quarter.length, kPi / 2.0, 1e-12);

  // a plane kept far from the positive orthant by rotating it about z
  Vector away1(3), away2(3);
  away1 << -1.0, 1.0, 0.0;
  away2 << 0.0, 0.0, 1.0;
  // circle through z and (-1,1,0)/sqrt2: quadrant x>=0,y>=0 touched only at z pole
  const ChordArc touch = chord_arc(octant, TwoPlane(UnitVector(away1), UnitVector(away2)));
  EXPECT_NEAR(touch.length, 0.0, 1e-9);
}

TEST(ChordArcBody, MatchesMembershipScan) {
  // arc length agrees with a brute-force scan of the circle
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  RngStream rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    Vector a = rng.gaussian(3);
    a.normalize();
    Vector b = rng.gaussian(3);
    b -= b.dot(a) * a;
    b.normalize();
    const TwoPlane plane{UnitVector(a), UnitVector(b)};
    const ChordArc arc = chord_arc(octant, plane);
    const int n = 20000;
    int inside = 0;
    for (int i = 0; i < n; ++i) {
      const double phi = 2.0 * kPi * i / n;
      Vector x = std::cos(phi) * plane.u().vec() + std::sin(phi) * plane.v().vec();
      if (body_membership(octant, UnitVector(std::move(x)))) ++inside;
    }
    EXPECT_NEAR(arc.length, 2.0 * kPi * inside / n, 2.0 * kPi * 2.5 / n);
  }
}

TEST(ChordArcBody, RotationInvariance) {
  RngStream rng(5150);
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  for (int trial = 0; trial < 25; ++trial) {
    Vector a = rng.gaussian(3);
    a.normalize();
    Vector b = rng.gaussian(3);
    b -= b.dot(a) * a;
    b.normalize();
    const TwoPlane plane{UnitVector(a), UnitVector(b)};
    const double before = chord_arc(octant, plane).length;

    const Eigen::MatrixXd rot = random_rotation(3, rng);
    std::vector<UnitVector> rotated;
    for (const auto& n : octant.normals()) rotated.emplace_back(Vector(rot * n.vec()));
    const ConvexSphericalBody moved(std::move(rotated),
                                    UnitVector(Vector(rot * octant.interior_point().vec())));
    const TwoPlane moved_plane{UnitVector(Vector(rot * plane.u().vec())),
                               UnitVector(Vector(rot * plane.v().vec()))};
    EXPECT_NEAR(chord_arc(moved, moved_plane).length, before, 1e-10);
  }
}

TEST(BodyMeasures, OctantVolumeAndBoundary) {
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  const BodyMeasures m = body_measures_mc(octant, 3, 200000, 424242);
  EXPECT_NEAR(m.volume.value, kPi / 2.0, 3.0 * m.volume.std_error);
  EXPECT_NEAR(m.boundary_area.value, 3.0 * kPi / 2.0, 3.0 * m.boundary_area.std_error);
  EXPECT_GT(m.volume.std_error, 0.0);

  EXPECT_NEAR(orthant_volume(3), kPi / 2.0, 1e-12);
  EXPECT_NEAR(orthant_boundary_area(3), 3.0 * kPi / 2.0, 1e-12);
}

TEST(BodyMeasures, CircumscribedCapMatchesClosedForms) {
  const double r = kPi / 3.0;
  const ConvexSphericalBody poly = testing::circumscribed_cap_body(r, 180);
  const SphericalCap cap = axis_cap(3, r);
  const BodyMeasures m = body_measures_mc(poly, 3, 200000, 99);
  // the 180-gon circumscribes the cap; its excess is far below 3 SE here
  EXPECT_NEAR(m.volume.value, cap_volume(cap, 3), 3.0 * m.volume.std_error);
  EXPECT_NEAR(m.boundary_area.value, cap_boundary_area(cap, 3),
              3.0 * m.boundary_area.std_error);
}

TEST(BodyMeasures, FacetEstimateMatchesOrthant) {
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  const McEstimate est = body_boundary_area_mc(octant, 3, 100000, 5);
  EXPECT_NEAR(est.value, 3.0 * kPi / 2.0, 3.0 * est.std_error + 1e-9);

  const ConvexSphericalBody oct4 = ConvexSphericalBody::orthant(4);
  const McEstimate est4 = body_boundary_area_mc(oct4, 4, 100000, 6);
  EXPECT_NEAR(est4.value, orthant_boundary_area(4), 3.0 * est4.std_error + 1e-9);
}

TEST(BodyMeasures, DeterministicAcrossWorkerPartition) {
  const ConvexSphericalBody octant = ConvexSphericalBody::orthant(3);
  const BodyMeasures a = body_measures_mc(octant, 3, 40000, 11, 1);
  const BodyMeasures b = body_measures_mc(octant, 3, 40000, 11, 1);
  EXPECT_DOUBLE_EQ(a.volume.value, b.volume.value);
  EXPECT_DOUBLE_EQ(a.boundary_area.value, b.boundary_area.value);
}

}  // namespace
}  // namespace spherechord
