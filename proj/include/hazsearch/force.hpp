#pragma once

#include <cmath>
#include <stdexcept>

#include "hazsearch/body_regions.hpp"

namespace hazsearch {

struct DegenerateMass : std::domain_error {
    using std::domain_error::domain_error;
};

/// Effective mass of the robot seen by the contact: half the moving link
/// mass plus the carried payload.
inline double effective_robot_mass(double moving_mass_kg, double payload_kg) {
    return moving_mass_kg / 2.0 + payload_kg;
}

/// Body-region-specific collision-force estimate from the two-body contact
/// model: F = v * sqrt(mu * k) with reduced mass mu = (1/m_H + 1/m_R)^-1.
/// Uses the absolute robot speed at the contact point; direction is ignored,
/// which is conservative.
inline double collision_force(double speed_mps, const BodyRegionParams& region,
                              double robot_moving_mass_kg, double payload_kg) {
    const double m_r = effective_robot_mass(robot_moving_mass_kg, payload_kg);
    const double m_h = region.effective_mass_kg;
    if (!(m_h > 0.0) || !(m_r > 0.0))
        throw DegenerateMass("reduced mass undefined: m_H and m_R must be > 0");
    const double mu = 1.0 / (1.0 / m_h + 1.0 / m_r);
    return speed_mps * std::sqrt(mu * region.spring_constant_n_per_m);
}

}  // namespace hazsearch
