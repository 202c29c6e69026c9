#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hazsearch/arm.hpp"
#include "hazsearch/force.hpp"
#include "hazsearch/simulator.hpp"

namespace hazsearch {

enum class DangerCase { Contact, Proximity, Separated };

inline const char* to_string(DangerCase c) {
    switch (c) {
        case DangerCase::Contact: return "contact";
        case DangerCase::Proximity: return "proximity";
        case DangerCase::Separated: return "separated";
    }
    return "?";
}

/// Heuristic grading of how close a state is to an unsafe contact.
/// Contact: c_D is the force ratio (may exceed 1). Proximity (d_HR <= 1.5 m,
/// not barrier-separated): virtual force ratio damped by e^-d and capped at
/// 1. Separated: 0.01. Always > 0.
struct DangerAssessment {
    DangerCase situation = DangerCase::Separated;
    double c_d = 0.01;
    double d_hr_m = std::numeric_limits<double>::infinity();
    double force_n = 0.0;  // actual force in contact, virtual force in proximity
    BodyRegion region = BodyRegion::Chest;
    int robot = -1;
    int link = -1;
};

/// Logged unsafe state: where the human was hit, how hard, and by what.
struct HazardReport {
    std::vector<int> actions;  // filled by the search layer
    Vec3 contact_point;
    BodyRegion region = BodyRegion::Chest;
    double force_n = 0.0;
    double max_force_n = 0.0;
    double robot_speed_mps = 0.0;
    int robot = -1;
    int link = -1;
};

inline constexpr double kProximityCutoff = 1.5;  // m
inline constexpr double kDangerFloor = 0.01;

namespace metrics_detail {

/// Uniform view over body-contact events and arm reach results.
struct ContactView {
    BodyRegion region;
    int robot;
    int link;
    Vec3 point;
    double speed_mps;
};

inline std::vector<ContactView> gather_contacts(const SimState& s,
                                                const std::optional<ReachResult>& reach) {
    std::vector<ContactView> out;
    for (const ContactEvent& e : s.last_contacts)
        out.push_back({e.region, e.robot, e.link, e.point, e.robot_speed_mps});
    if (reach)
        out.push_back({reach->region, reach->robot, reach->link, reach->contact_point,
                       reach->robot_point_speed_mps});
    return out;
}

}  // namespace metrics_detail

/// Unsafe-state predicate: a contact whose estimated collision force exceeds
/// the body-region limit. Returns the report for the worst exceeding contact.
inline std::optional<HazardReport> is_unsafe(const Simulator& sim, const SimState& s,
                                             const std::optional<ReachResult>& reach = std::nullopt) {
    const Scenario& sc = sim.scenario();
    std::optional<HazardReport> worst;
    double worst_ratio = 1.0;
    for (const auto& c : metrics_detail::gather_contacts(s, reach)) {
        const BodyRegionParams& rp = sc.regions.at(c.region);
        const double f = collision_force(c.speed_mps, rp, sc.robots[c.robot].moving_mass_kg(),
                                         s.robots[c.robot].payload_kg);
        const double ratio = f / rp.max_force_n;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            HazardReport h;
            h.contact_point = c.point;
            h.region = c.region;
            h.force_n = f;
            h.max_force_n = rp.max_force_n;
            h.robot_speed_mps = c.speed_mps;
            h.robot = c.robot;
            h.link = c.link;
            worst = h;
        }
    }
    return worst;
}

/// Danger index c_D (three cases: contact / proximity / separated).
inline DangerAssessment danger_index(const Simulator& sim, const SimState& s,
                                     const std::optional<ReachResult>& reach = std::nullopt) {
    const Scenario& sc = sim.scenario();

    // Case (a): any contact, actual or via a reachable arm configuration.
    const auto contacts = metrics_detail::gather_contacts(s, reach);
    if (!contacts.empty()) {
        DangerAssessment best;
        best.situation = DangerCase::Contact;
        best.d_hr_m = 0.0;
        best.c_d = -1.0;
        for (const auto& c : contacts) {
            const BodyRegionParams& rp = sc.regions.at(c.region);
            const double f = collision_force(c.speed_mps, rp, sc.robots[c.robot].moving_mass_kg(),
                                             s.robots[c.robot].payload_kg);
            const double ratio = f / rp.max_force_n;
            if (ratio > best.c_d) {
                best.c_d = ratio;
                best.force_n = f;
                best.region = c.region;
                best.robot = c.robot;
                best.link = c.link;
            }
        }
        best.c_d = std::max(best.c_d, kDangerFloor);  // stopped robot still grades > 0
        return best;
    }

    const ClosestPair cp = sim.closest_human_robot(s);
    DangerAssessment out;
    out.d_hr_m = cp.distance;
    out.region = cp.region;
    out.robot = cp.robot;
    out.link = cp.link;

    const auto barriers = sc.barrier_shapes();
    const bool separated = cp.distance > kProximityCutoff ||
                           segment_blocked(cp.witness_human, cp.witness_robot, barriers);
    if (separated || cp.robot < 0) {
        out.situation = DangerCase::Separated;
        out.c_d = kDangerFloor;
        return out;
    }

    // Case (b): virtual collision force of the closest pair, damped by
    // distance and capped at 1 so proximity never outranks a contact that
    // exceeds the limit.
    out.situation = DangerCase::Proximity;
    const BodyRegionParams& rp = sc.regions.at(cp.region);
    const double speed = sim.robot_point_speed(s, cp.robot, cp.link, cp.witness_robot);
    const double f_virt = collision_force(speed, rp, sc.robots[cp.robot].moving_mass_kg(),
                                          s.robots[cp.robot].payload_kg);
    out.force_n = f_virt;
    const double raw = f_virt / rp.max_force_n * std::exp(-cp.distance);
    out.c_d = std::clamp(raw, kDangerFloor, 1.0);
    return out;
}

}  // namespace hazsearch
