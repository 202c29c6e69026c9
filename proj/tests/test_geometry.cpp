#include "hazsearch/geometry.hpp"

#include <gtest/gtest.h>

#include "geometry_oracle.hpp"
#include "hazsearch/rng.hpp"

using namespace hazsearch;

TEST(Distance, SphereSphereSeparated) {
    const Shape a = Sphere{{0, 0, 0}, 0.1};
    const Shape b = Sphere{{1, 0, 0}, 0.1};
    const ContactInfo ci = distance(a, b);
    EXPECT_NEAR(ci.distance, 0.8, 1e-12);
    EXPECT_NEAR((ci.witness_a - Vec3{0.1, 0, 0}).norm(), 0.0, 1e-12);
    EXPECT_NEAR((ci.witness_b - Vec3{0.9, 0, 0}).norm(), 0.0, 1e-12);
}

TEST(Distance, IdenticalSpheresPenetrate) {
    const Shape a = Sphere{{0.3, -0.2, 1.0}, 0.25};
    EXPECT_EQ(distance(a, a).distance, 0.0);
}

TEST(Distance, CapsuleSphere) {
    const Shape cap = Capsule{{0, 0, 0}, {0, 0, 1}, 0.05};
    const Shape sph = Sphere{{0.2, 0, 0.5}, 0.05};
    EXPECT_NEAR(distance(cap, sph).distance, 0.1, 1e-12);
}

TEST(Distance, WitnessGapEqualsDistance) {
    CounterRng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Shape a = oracle::random_shape(rng);
        const Shape b = oracle::random_shape(rng);
        const ContactInfo ci = distance(a, b);
        if (ci.distance > 0.0)
            EXPECT_NEAR((ci.witness_a - ci.witness_b).norm(), ci.distance, 1e-9);
    }
}

TEST(Distance, Symmetry) {
    CounterRng rng(11);
    for (int i = 0; i < 300; ++i) {
        const Shape a = oracle::random_shape(rng);
        const Shape b = oracle::random_shape(rng);
        EXPECT_EQ(distance(a, b).distance, distance(b, a).distance);
    }
}

TEST(Distance, SphereAnalyticFormula) {
    CounterRng rng(13);
    for (int i = 0; i < 300; ++i) {
        const Sphere s1{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
                        rng.uniform(0.05, 0.8)};
        const Sphere s2{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)},
                        rng.uniform(0.05, 0.8)};
        const double expected =
            std::max(0.0, (s1.center - s2.center).norm() - s1.radius - s2.radius);
        EXPECT_NEAR(distance(Shape{s1}, Shape{s2}).distance, expected, 1e-9);
    }
}

TEST(Distance, TranslationInvariance) {
    CounterRng rng(17);
    for (int i = 0; i < 100; ++i) {
        const Shape a = oracle::random_shape(rng);
        const Shape b = oracle::random_shape(rng);
        const Vec3 t{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const auto shift = [&t](Shape s) -> Shape {
            if (auto* sp = std::get_if<Sphere>(&s)) sp->center += t;
            if (auto* cp = std::get_if<Capsule>(&s)) {
                cp->a += t;
                cp->b += t;
            }
            if (auto* bx = std::get_if<Box>(&s)) bx->center += t;
            return s;
        };
        EXPECT_NEAR(distance(a, b).distance, distance(shift(a), shift(b)).distance, 1e-9);
    }
}

TEST(Distance, MatchesBruteForceOracle) {
    CounterRng rng(101);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const Shape a = oracle::random_shape(rng);
        const Shape b = oracle::random_shape(rng);
        const double got = distance(a, b).distance;
        const double expected = oracle::brute_force_distance(a, b);
        EXPECT_NEAR(got, expected, 1e-6) << "pair " << i;
        ++checked;
    }
    EXPECT_EQ(checked, 60);
}

TEST(Distance, PenetratingPairsReportZero) {
    CounterRng rng(19);
    int overlaps = 0;
    for (int i = 0; i < 400 && overlaps < 40; ++i) {
        const Shape a = oracle::random_shape(rng);
        const Shape b = oracle::random_shape(rng);
        if (oracle::brute_force_distance(a, b, 24) == 0.0) {
            EXPECT_EQ(distance(a, b).distance, 0.0);
            ++overlaps;
        }
    }
    EXPECT_GE(overlaps, 10);
}

TEST(Distance, InvalidShapesRejected) {
    EXPECT_THROW(validate_shape(Shape{Sphere{{0, 0, 0}, 0.0}}), InvalidShape);
    EXPECT_THROW(validate_shape(Shape{Capsule{{0, 0, 0}, {1, 0, 0}, -0.1}}), InvalidShape);
    EXPECT_THROW(validate_shape(Shape{Box{{0, 0, 0}, {1, 0.5, 0}, Rot3::identity()}}), InvalidShape);
    Box skew{{0, 0, 0}, {1, 1, 1}, Rot3::identity()};
    skew.rot.m[0] = 2.0;
    EXPECT_THROW(validate_shape(Shape{skew}), InvalidShape);
    EXPECT_NO_THROW(validate_shape(Shape{Sphere{{0, 0, 0}, 0.2}}));
}

TEST(SegmentBlocked, ThroughBoxInterior) {
    const std::vector<Shape> barriers{Box{{0, 0, 0}, {0.5, 0.5, 0.5}, Rot3::identity()}};
    EXPECT_TRUE(segment_blocked({-2, 0, 0}, {2, 0, 0}, barriers));
}

TEST(SegmentBlocked, OutsideAllBarriers) {
    const std::vector<Shape> barriers{Box{{0, 0, 0}, {0.5, 0.5, 0.5}, Rot3::identity()},
                                      Sphere{{2, 2, 2}, 0.3}};
    EXPECT_FALSE(segment_blocked({-2, 2, 0}, {2, 2, 0}, barriers));
}

TEST(SegmentBlocked, GrazingCountsAsBlocked) {
    // Segment running exactly along the top face plane z = 0.5.
    const std::vector<Shape> barriers{Box{{0, 0, 0}, {0.5, 0.5, 0.5}, Rot3::identity()}};
    EXPECT_TRUE(segment_blocked({-2, 0, 0.5}, {2, 0, 0.5}, barriers));
}

TEST(SegmentBlocked, DegenerateSegment) {
    const std::vector<Shape> barriers{Box{{0, 0, 0}, {0.5, 0.5, 0.5}, Rot3::identity()}};
    EXPECT_FALSE(segment_blocked({0, 0, 0}, {0, 0, 0}, barriers));
}

TEST(Rot3, ProperRotationChecks) {
    EXPECT_TRUE(Rot3::identity().is_proper());
    EXPECT_TRUE(Rot3::axis_angle({0.3, -0.5, 1.0}, 1.234).is_proper());
    Rot3 reflect = Rot3::identity();
    reflect.m[0] = -1.0;
    EXPECT_FALSE(reflect.is_proper());
}
