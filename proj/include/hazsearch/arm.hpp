#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>

#include "hazsearch/geometry.hpp"
#include "hazsearch/human.hpp"
#include "hazsearch/rng.hpp"

namespace hazsearch {

struct JointRange {
    double min_rad = 0.0;
    double max_rad = 0.0;
};

/// 4-DoF articulated arm: shoulder flexion and abduction, upper-arm rotation,
/// and elbow flexion. Wrist flexion and lower-arm rotation are replaced by a
/// bounding sphere around the wrist that over-approximates hand poses.
struct ArmModel {
    double upper_length_m = 0.335;
    double lower_length_m = 0.264;
    double wrist_radius_m = 0.120;
    double arm_radius_m = 0.05;
    JointRange flexion{deg2rad(-60.0), deg2rad(180.0)};
    JointRange abduction{0.0, deg2rad(135.0)};
    JointRange rotation{deg2rad(-90.0), deg2rad(90.0)};
    JointRange elbow{0.0, deg2rad(145.0)};

    double max_reach() const { return upper_length_m + lower_length_m + wrist_radius_m; }
};

struct ArmConfig {
    double flexion = 0.0;
    double abduction = 0.0;
    double rotation = 0.0;
    double elbow = 0.0;
};

enum class ArmSide { Right, Left };

/// Arm shapes for one configuration: upper-arm capsule, forearm capsule and
/// the wrist bounding sphere, in world coordinates.
struct ArmShapes {
    Capsule upper;
    Capsule forearm;
    Sphere wrist;
};

/// Forward kinematics. In the torso frame (x forward, y left, z up) the arm
/// rests pointing down; flexion raises it forward, abduction away from the
/// body, rotation spins it about its own axis and selects the elbow plane.
inline ArmShapes arm_forward_kinematics(const Vec3& shoulder, const Rot3& torso_rot,
                                        ArmSide side, const ArmConfig& q, const ArmModel& arm) {
    const double sigma = side == ArmSide::Right ? 1.0 : -1.0;
    const Rot3 flex = Rot3::axis_angle({0, 1, 0}, -q.flexion);
    const Rot3 abduct = Rot3::axis_angle({1, 0, 0}, -sigma * q.abduction);
    const Rot3 shoulder_rot = flex * abduct;

    const Vec3 upper_dir_local = shoulder_rot * Vec3{0, 0, -1};
    const Vec3 elbow_axis_pre = shoulder_rot * Vec3{0, 1, 0};
    const Rot3 twist = Rot3::axis_angle(upper_dir_local, sigma * q.rotation);
    const Vec3 elbow_axis = twist * elbow_axis_pre;
    const Vec3 fore_dir_local = Rot3::axis_angle(elbow_axis, -q.elbow) * upper_dir_local;

    const Vec3 upper_dir = torso_rot * upper_dir_local;
    const Vec3 fore_dir = torso_rot * fore_dir_local;
    const Vec3 elbow = shoulder + upper_dir * arm.upper_length_m;
    const Vec3 wrist = elbow + fore_dir * arm.lower_length_m;

    return {Capsule{shoulder, elbow, arm.arm_radius_m},
            Capsule{elbow, wrist, arm.arm_radius_m},
            Sphere{wrist, arm.wrist_radius_m}};
}

/// A robot collision shape annotated with its owning robot and link index.
struct RobotLinkShape {
    Capsule shape;
    int robot = 0;
    int link = 0;
};

/// Outcome of a successful reachability check: a sampled arm configuration
/// that touches a robot link without any arm shape penetrating an obstacle.
struct ReachResult {
    Vec3 contact_point;
    int robot = 0;
    int link = 0;
    BodyRegion region = BodyRegion::Hand;
    ArmSide side = ArmSide::Right;
    ArmConfig config;
    double robot_point_speed_mps = 0.0;
};

struct ReachStats {
    int samples_drawn = 0;
    bool precheck_passed = false;
};

/// Callback used to annotate a contact with the robot's point speed.
using LinkPointSpeedFn = std::function<double(int robot, int link, const Vec3& point)>;

namespace arm_detail {

inline bool arm_hits_statics(const ArmShapes& s, std::span<const Shape> statics) {
    const Shape parts[3] = {Shape{s.upper}, Shape{s.forearm}, Shape{s.wrist}};
    for (const Shape& p : parts)
        for (const Shape& obst : statics) {
            if (!bounding_spheres_touch(p, obst)) continue;
            if (shapes_touch(p, obst)) return true;
        }
    return false;
}

struct ArmContact {
    Vec3 point;
    int robot = 0;
    int link = 0;
    BodyRegion region = BodyRegion::Hand;
};

/// Checks wrist, forearm, then upper arm against the robot links and reports
/// the first touching pair.
inline std::optional<ArmContact> arm_touches_robot(const ArmShapes& s,
                                                   std::span<const RobotLinkShape> links) {
    struct Part {
        Shape shape;
        BodyRegion region;
    };
    const Part parts[3] = {{Shape{s.wrist}, BodyRegion::Hand},
                           {Shape{s.forearm}, BodyRegion::Forearm},
                           {Shape{s.upper}, BodyRegion::UpperArm}};
    for (const Part& p : parts)
        for (const RobotLinkShape& l : links) {
            if (!bounding_spheres_touch(p.shape, Shape{l.shape})) continue;
            const ContactInfo ci = distance(p.shape, Shape{l.shape});
            if (ci.distance <= 0.0) {
                return ArmContact{(ci.witness_a + ci.witness_b) * 0.5, l.robot, l.link, p.region};
            }
        }
    return std::nullopt;
}

}  // namespace arm_detail

/// Sampling-based reachability check for one shoulder. Draws up to
/// sample_budget low-discrepancy configurations within the joint limits and
/// returns the first that touches a robot link while no arm shape penetrates
/// a static obstacle. Deterministic for a given seed.
inline std::optional<ReachResult> reach_check_shoulder(
    const Vec3& shoulder, const Rot3& torso_rot, ArmSide side, const ArmModel& arm,
    std::span<const RobotLinkShape> links, std::span<const Shape> statics, int sample_budget,
    std::uint64_t seed, const LinkPointSpeedFn& speed_fn = {}, ReachStats* stats = nullptr) {
    // Cheap pre-check: the robot must be within maximum arm reach at all.
    const double reach = arm.max_reach();
    bool reachable = false;
    for (const RobotLinkShape& l : links) {
        const ContactInfo ci = distance(Shape{Sphere{shoulder, 1e-9}}, Shape{l.shape});
        if (ci.distance <= reach) {
            reachable = true;
            break;
        }
    }
    if (!reachable) return std::nullopt;
    if (stats) stats->precheck_passed = true;

    Halton4 seq(seed);
    for (int i = 0; i < sample_budget; ++i) {
        const auto u = seq.next();
        if (stats) ++stats->samples_drawn;
        const ArmConfig q{arm.flexion.min_rad + u[0] * (arm.flexion.max_rad - arm.flexion.min_rad),
                          arm.abduction.min_rad + u[1] * (arm.abduction.max_rad - arm.abduction.min_rad),
                          arm.rotation.min_rad + u[2] * (arm.rotation.max_rad - arm.rotation.min_rad),
                          arm.elbow.min_rad + u[3] * (arm.elbow.max_rad - arm.elbow.min_rad)};
        const ArmShapes shapes = arm_forward_kinematics(shoulder, torso_rot, side, q, arm);
        const auto contact = arm_detail::arm_touches_robot(shapes, links);
        if (!contact) continue;
        if (arm_detail::arm_hits_statics(shapes, statics)) continue;
        ReachResult r;
        r.contact_point = contact->point;
        r.robot = contact->robot;
        r.link = contact->link;
        r.region = contact->region;
        r.side = side;
        r.config = q;
        if (speed_fn) r.robot_point_speed_mps = speed_fn(contact->robot, contact->link, contact->point);
        return r;
    }
    return std::nullopt;
}

/// Reachability check over both shoulders (right first, then left).
inline std::optional<ReachResult> reach_check(const HumanBody& body, const ArmModel& arm,
                                              std::span<const RobotLinkShape> links,
                                              std::span<const Shape> statics, int sample_budget,
                                              std::uint64_t seed,
                                              const LinkPointSpeedFn& speed_fn = {},
                                              ReachStats* stats = nullptr) {
    if (auto r = reach_check_shoulder(body.shoulder_right, body.torso_rot, ArmSide::Right, arm,
                                      links, statics, sample_budget, derive_seed(seed, 1),
                                      speed_fn, stats))
        return r;
    return reach_check_shoulder(body.shoulder_left, body.torso_rot, ArmSide::Left, arm, links,
                                statics, sample_budget, derive_seed(seed, 2), speed_fn, stats);
}

}  // namespace hazsearch
