#pragma once

#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "hazsearch/body_regions.hpp"
#include "hazsearch/geometry.hpp"
#include "hazsearch/math.hpp"

namespace hazsearch {

enum class Walking { Stop, Forward, Left45, Left90, Right45, Right90 };
enum class UpperBody { Upright, BendForward, BendLeft, BendRight, BendForwardRight, BendForwardLeft };

/// One combined human action: a walking motion paired with an upper-body
/// motion. The full action space is the 6x6 cartesian product.
struct HumanAction {
    Walking walking = Walking::Stop;
    UpperBody upper_body = UpperBody::Upright;
    bool operator==(const HumanAction&) const = default;
};

inline constexpr int kNumWalking = 6;
inline constexpr int kNumUpperBody = 6;
inline constexpr int kNumActions = kNumWalking * kNumUpperBody;

/// Action indexing: index = walking * 6 + upper_body, so index 0 is
/// (stop, upright) and index 35 is (right90, bend_forward_left).
inline HumanAction action_from_index(int index) {
    return {static_cast<Walking>(index / kNumUpperBody),
            static_cast<UpperBody>(index % kNumUpperBody)};
}

inline int action_index(const HumanAction& a) {
    return static_cast<int>(a.walking) * kNumUpperBody + static_cast<int>(a.upper_body);
}

/// The full 36-element action space in index order.
inline std::array<HumanAction, kNumActions> action_space() {
    std::array<HumanAction, kNumActions> out;
    for (int i = 0; i < kNumActions; ++i) out[i] = action_from_index(i);
    return out;
}

inline const char* to_string(Walking w) {
    switch (w) {
        case Walking::Stop: return "stop";
        case Walking::Forward: return "forward";
        case Walking::Left45: return "left45";
        case Walking::Left90: return "left90";
        case Walking::Right45: return "right45";
        case Walking::Right90: return "right90";
    }
    return "?";
}

inline const char* to_string(UpperBody u) {
    switch (u) {
        case UpperBody::Upright: return "upright";
        case UpperBody::BendForward: return "bend_forward";
        case UpperBody::BendLeft: return "bend_left";
        case UpperBody::BendRight: return "bend_right";
        case UpperBody::BendForwardRight: return "bend_forward_right";
        case UpperBody::BendForwardLeft: return "bend_forward_left";
    }
    return "?";
}

/// Dimensions and motion parameters of the virtual human. Defaults describe
/// a 1.75 m adult; all fields are scenario-overridable.
struct HumanParams {
    double walk_speed_mps = 1.6;  // human approach speed assumed by ISO 13855
    double pelvis_height_m = 0.95;
    double torso_length_m = 0.55;        // pelvis to neck
    double torso_radius_m = 0.15;
    double head_offset_m = 0.67;         // pelvis to head center, along torso
    double head_radius_m = 0.11;
    double shoulder_offset_m = 0.50;     // pelvis to shoulder line, along torso
    double shoulder_halfwidth_m = 0.20;
    double hip_halfwidth_m = 0.10;
    double leg_radius_m = 0.08;
    double bend_pitch_rad = deg2rad(50.0);
    double bend_roll_rad = deg2rad(30.0);
    double bend_rate_rad_per_s = deg2rad(150.0);
};

/// Pose state of the virtual human: planar base pose plus torso lean.
struct HumanPose {
    double x = 0.0, y = 0.0;
    double heading = 0.0;     // rad, 0 = +x, counterclockwise
    double pitch = 0.0;       // torso forward lean, rad
    double roll = 0.0;        // torso sideways lean, rad (+ = right)
    bool operator==(const HumanPose&) const = default;
};

struct TaggedShape {
    Shape shape;
    BodyRegion region;
};

/// Geometric realization of the human at a given pose: collision shapes with
/// body-region tags plus the shoulder anchor points used by the arm model.
struct HumanBody {
    HumanPose pose;
    std::vector<TaggedShape> shapes;   // torso, head, left leg, right leg
    Vec3 shoulder_left;
    Vec3 shoulder_right;
    Vec3 foot_left;
    Vec3 foot_right;
    Rot3 torso_rot;                    // world rotation of the leaned torso
};

/// Torso rotation: heading yaw, then forward pitch about the local left
/// axis, then roll about the pitched forward axis.
inline Rot3 torso_rotation(const HumanPose& p) {
    const Rot3 yaw = Rot3::yaw(p.heading);
    const Rot3 pitched = yaw * Rot3::axis_angle({0, 1, 0}, p.pitch);
    return pitched * Rot3::axis_angle({1, 0, 0}, p.roll);
}

inline HumanBody human_body(const HumanPose& pose, const HumanParams& hp = {}) {
    HumanBody b;
    b.pose = pose;
    b.torso_rot = torso_rotation(pose);
    const Vec3 pelvis{pose.x, pose.y, hp.pelvis_height_m};
    const Vec3 up = b.torso_rot * Vec3{0, 0, 1};
    const Vec3 neck = pelvis + up * hp.torso_length_m;

    b.shapes.push_back({Capsule{pelvis, neck, hp.torso_radius_m}, BodyRegion::Chest});
    b.shapes.push_back({Sphere{pelvis + up * hp.head_offset_m, hp.head_radius_m}, BodyRegion::HeadFace});

    const Vec3 lat = Rot3::yaw(pose.heading) * Vec3{0, 1, 0};  // left
    const Vec3 hip_l = pelvis + lat * hp.hip_halfwidth_m;
    const Vec3 hip_r = pelvis - lat * hp.hip_halfwidth_m;
    b.foot_left = {hip_l.x, hip_l.y, 0.0};
    b.foot_right = {hip_r.x, hip_r.y, 0.0};
    const double foot_z = hp.leg_radius_m;
    b.shapes.push_back({Capsule{{hip_l.x, hip_l.y, foot_z}, hip_l, hp.leg_radius_m}, BodyRegion::LowerLegs});
    b.shapes.push_back({Capsule{{hip_r.x, hip_r.y, foot_z}, hip_r, hp.leg_radius_m}, BodyRegion::LowerLegs});

    const Vec3 shoulder_mid = pelvis + up * hp.shoulder_offset_m;
    const Vec3 slat = b.torso_rot * Vec3{0, 1, 0};
    b.shoulder_left = shoulder_mid + slat * hp.shoulder_halfwidth_m;
    b.shoulder_right = shoulder_mid - slat * hp.shoulder_halfwidth_m;
    return b;
}

inline bool body_intersects(const HumanBody& body, std::span<const Shape> statics) {
    for (const auto& ts : body.shapes)
        for (const Shape& s : statics) {
            if (!bounding_spheres_touch(ts.shape, s)) continue;
            if (shapes_touch(ts.shape, s)) return true;
        }
    return false;
}

inline double walking_turn(Walking w) {
    switch (w) {
        case Walking::Left45: return deg2rad(45.0);
        case Walking::Left90: return deg2rad(90.0);
        case Walking::Right45: return -deg2rad(45.0);
        case Walking::Right90: return -deg2rad(90.0);
        default: return 0.0;
    }
}

inline void upper_body_targets(UpperBody u, const HumanParams& hp, double& pitch, double& roll) {
    pitch = 0.0;
    roll = 0.0;
    switch (u) {
        case UpperBody::Upright: break;
        case UpperBody::BendForward: pitch = hp.bend_pitch_rad; break;
        case UpperBody::BendLeft: roll = -hp.bend_roll_rad; break;
        case UpperBody::BendRight: roll = hp.bend_roll_rad; break;
        case UpperBody::BendForwardRight:
            pitch = hp.bend_pitch_rad;
            roll = hp.bend_roll_rad;
            break;
        case UpperBody::BendForwardLeft:
            pitch = hp.bend_pitch_rad;
            roll = -hp.bend_roll_rad;
            break;
    }
}

inline double move_toward(double value, double target, double max_step) {
    if (value < target) return std::min(value + max_step, target);
    if (value > target) return std::max(value - max_step, target);
    return value;
}

/// Advance the human by one time slice of the given action. Turns are applied
/// on the first slice of an action (apply_turn), then the human walks at
/// walk_speed and leans toward the posture targets at the fixed bend rate.
/// The position is clamped against static obstacles by bisecting the slice
/// displacement; there is no slide-along.
inline HumanPose apply_action_slice(const HumanPose& pose, const HumanAction& a, double dt,
                                    std::span<const Shape> statics, const HumanParams& hp,
                                    bool apply_turn) {
    HumanPose next = pose;
    if (apply_turn) next.heading += walking_turn(a.walking);

    double tp, tr;
    upper_body_targets(a.upper_body, hp, tp, tr);
    next.pitch = move_toward(next.pitch, tp, hp.bend_rate_rad_per_s * dt);
    next.roll = move_toward(next.roll, tr, hp.bend_rate_rad_per_s * dt);

    if (a.walking != Walking::Stop) {
        const double step = hp.walk_speed_mps * dt;
        const Vec3 dir{std::cos(next.heading), std::sin(next.heading), 0.0};
        HumanPose trial = next;
        trial.x += dir.x * step;
        trial.y += dir.y * step;
        if (!body_intersects(human_body(trial, hp), statics)) {
            next = trial;
        } else {
            // Largest collision-free fraction of the step.
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 24; ++it) {
                const double mid = 0.5 * (lo + hi);
                HumanPose probe = next;
                probe.x += dir.x * step * mid;
                probe.y += dir.y * step * mid;
                if (body_intersects(human_body(probe, hp), statics))
                    hi = mid;
                else
                    lo = mid;
            }
            next.x += dir.x * step * lo;
            next.y += dir.y * step * lo;
        }
    }
    return next;
}

/// Whole-action convenience form: one turn followed by a full-duration walk.
inline HumanPose apply_action(const HumanPose& pose, const HumanAction& a, double dt,
                              std::span<const Shape> statics = {}, const HumanParams& hp = {},
                              int slices = 1) {
    HumanPose p = pose;
    const double slice_dt = dt / slices;
    for (int i = 0; i < slices; ++i)
        p = apply_action_slice(p, a, slice_dt, statics, hp, i == 0);
    return p;
}

}  // namespace hazsearch
