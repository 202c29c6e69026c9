#include "hazsearch/force.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "hazsearch/rng.hpp"

using namespace hazsearch;

namespace {
BodyRegionParams chest() { return {BodyRegion::Chest, 40.0, 25000.0, 140.0}; }
}  // namespace

TEST(CollisionForce, ZeroSpeedZeroForce) {
    EXPECT_EQ(collision_force(0.0, chest(), 30.0, 0.0), 0.0);
}

TEST(CollisionForce, HandComputedFixture) {
    // m_H = 40 kg, M = 30 kg, m_L = 0: m_R = 15, mu = 10.909091 kg,
    // F = 0.5 * sqrt(mu * 25000) = 261.116484 N.
    EXPECT_NEAR(collision_force(0.5, chest(), 30.0, 0.0), 261.116484, 1e-5);
}

TEST(CollisionForce, PayloadIncreasesForce) {
    // Same contact with a 10 kg payload: m_R = 25, mu = 15.384615, F = 310.086836 N.
    EXPECT_NEAR(collision_force(0.5, chest(), 30.0, 10.0), 310.086836, 1e-5);
    EXPECT_GT(collision_force(0.5, chest(), 30.0, 10.0), collision_force(0.5, chest(), 30.0, 0.0));
}

TEST(CollisionForce, LinearInSpeed) {
    CounterRng rng(23);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(0.0, 3.0);
        const double a = rng.uniform(0.0, 4.0);
        const BodyRegionParams region{BodyRegion::Forearm, rng.uniform(0.5, 60.0),
                                      rng.uniform(1e4, 1e5), 160.0};
        const double m = rng.uniform(5.0, 60.0);
        const double ml = rng.uniform(0.0, 20.0);
        const double lhs = collision_force(a * v, region, m, ml);
        const double rhs = a * collision_force(v, region, m, ml);
        EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(CollisionForce, StrictlyMonotoneInPayload) {
    CounterRng rng(29);
    for (int i = 0; i < 200; ++i) {
        const BodyRegionParams region{BodyRegion::Hand, rng.uniform(0.5, 60.0),
                                      rng.uniform(1e4, 1e5), 140.0};
        const double v = rng.uniform(0.01, 3.0);
        const double m = rng.uniform(5.0, 60.0);
        const double ml = rng.uniform(0.0, 20.0);
        const double dl = rng.uniform(0.01, 10.0);
        EXPECT_LT(collision_force(v, region, m, ml), collision_force(v, region, m, ml + dl));
    }
}

TEST(CollisionForce, DegenerateMassThrows) {
    BodyRegionParams bad = chest();
    bad.effective_mass_kg = 0.0;
    EXPECT_THROW(collision_force(1.0, bad, 30.0, 0.0), DegenerateMass);
    EXPECT_THROW(collision_force(1.0, chest(), 0.0, 0.0), DegenerateMass);
}

TEST(BodyRegionTable, DefaultsCoverAllRegions) {
    const BodyRegionTable t = default_body_regions();
    for (BodyRegion r : kAllRegions) {
        EXPECT_TRUE(t.contains(r));
        EXPECT_GT(t.at(r).effective_mass_kg, 0.0);
        EXPECT_GT(t.at(r).spring_constant_n_per_m, 0.0);
        EXPECT_GT(t.at(r).max_force_n, 0.0);
    }
}

TEST(BodyRegionTable, LoadConvertsSpringUnits) {
    std::istringstream in(
        "# region  m_H_kg  k_N_per_mm  F_max_N\n"
        "chest 40 25 140\n"
        "hand  0.6 75 140\n");
    const BodyRegionTable t = load_body_regions(in);
    EXPECT_EQ(t.at(BodyRegion::Chest).spring_constant_n_per_m, 25000.0);
    EXPECT_EQ(t.at(BodyRegion::Hand).effective_mass_kg, 0.6);
}

TEST(BodyRegionTable, RejectsUnknownRegionAndBadValues) {
    std::istringstream bad1("elbow 1 1 1\n");
    EXPECT_THROW(load_body_regions(bad1), RegionTableError);
    std::istringstream bad2("chest 40 -3 140\n");
    EXPECT_THROW(load_body_regions(bad2), RegionTableError);
    std::istringstream bad3("chest 40\n");
    EXPECT_THROW(load_body_regions(bad3), RegionTableError);
}

TEST(BodyRegionTable, MissingRegionThrowsUnknownRegion) {
    BodyRegionTable t;
    t.insert(chest());
    EXPECT_THROW(t.at(BodyRegion::Hand), UnknownRegion);
}
