#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hazsearch/geometry.hpp"
#include "hazsearch/math.hpp"

namespace hazsearch {

enum class JointType { Revolute, Prismatic };

struct RobotJoint {
    JointType type = JointType::Revolute;
    Vec3 axis{0, 0, 1};
    Transform origin;  // fixed transform from the parent joint frame
};

struct RobotLink {
    Capsule shape;       // in the frame of the attachment joint
    int joint = 0;
    double mass_kg = 0.0;
};

enum class GraspEvent { None, Grasp, Release };

struct TrajectoryWaypoint {
    double time_s = 0.0;
    std::vector<double> q;
    GraspEvent event = GraspEvent::None;
    double payload_kg = 0.0;  // payload attached by a Grasp event
};

/// Cyclic joint-space trajectory, piecewise-linearly interpolated between
/// waypoints. The first waypoint must be at t = 0; after the last waypoint
/// the joints return to waypoint 0 at t = cycle_s.
struct Trajectory {
    std::vector<TrajectoryWaypoint> waypoints;
    double cycle_s = 0.0;
};

struct RobotModel {
    std::string id;
    Transform base_pose;
    std::vector<RobotJoint> joints;
    std::vector<RobotLink> links;
    Trajectory trajectory;
    std::optional<double> moving_mass_override_kg;

    double moving_mass_kg() const {
        if (moving_mass_override_kg) return *moving_mass_override_kg;
        double m = 0.0;
        for (const auto& l : links) m += l.mass_kg;
        return m;
    }
};

namespace robot_detail {

inline Transform joint_motion(const RobotJoint& j, double q) {
    if (j.type == JointType::Revolute) return {Rot3::axis_angle(j.axis, q), {0, 0, 0}};
    return {Rot3::identity(), j.axis.normalized() * q};
}

}  // namespace robot_detail

/// World frames of every joint for the given joint vector.
inline std::vector<Transform> forward_kinematics(const RobotModel& r, const std::vector<double>& q) {
    std::vector<Transform> frames(r.joints.size());
    Transform f = r.base_pose;
    for (std::size_t i = 0; i < r.joints.size(); ++i) {
        f = f * r.joints[i].origin * robot_detail::joint_motion(r.joints[i], q[i]);
        frames[i] = f;
    }
    return frames;
}

/// World capsule of one link at the given joint vector.
inline Capsule link_world_shape(const RobotModel& r, const std::vector<Transform>& frames, int link) {
    const RobotLink& l = r.links[link];
    const Transform& f = frames[l.joint];
    return Capsule{f.apply(l.shape.a), f.apply(l.shape.b), l.shape.radius};
}

/// Joint vector at trajectory phase tau (wraps into [0, cycle)).
inline std::vector<double> sample_trajectory(const Trajectory& t, double tau) {
    const std::size_t n = t.waypoints.size();
    if (n == 1) return t.waypoints[0].q;
    double ph = std::fmod(tau, t.cycle_s);
    if (ph < 0.0) ph += t.cycle_s;
    std::size_t seg = n - 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (ph >= t.waypoints[i].time_s && ph < t.waypoints[i + 1].time_s) {
            seg = i;
            break;
        }
    }
    const TrajectoryWaypoint& a = t.waypoints[seg];
    const bool last = seg == n - 1;
    const TrajectoryWaypoint& b = last ? t.waypoints[0] : t.waypoints[seg + 1];
    const double t1 = last ? t.cycle_s : b.time_s;
    const double span = t1 - a.time_s;
    const double u = span > 0.0 ? (ph - a.time_s) / span : 0.0;
    std::vector<double> q(a.q.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = a.q[i] + (b.q[i] - a.q[i]) * u;
    return q;
}

/// Indices of waypoints whose timestamps lie in the advanced interval
/// (tau_prev, tau_next], handling cycle wrap. Used for grasp events.
inline void waypoints_crossed(const Trajectory& t, double tau_prev, double tau_next,
                              std::vector<std::size_t>& out) {
    out.clear();
    if (tau_next <= tau_prev) return;
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
        const double base = std::floor(tau_prev / t.cycle_s) * t.cycle_s;
        for (double shift = base; shift <= tau_next; shift += t.cycle_s) {
            const double wt = shift + t.waypoints[i].time_s;
            if (wt > tau_prev && wt <= tau_next) {
                out.push_back(i);
                break;
            }
        }
    }
}

/// Per-robot playback speed scaling implementing stop ramps and scanner-zone
/// velocity limits. The factor ramps linearly toward the target with a slope
/// of 1/stopping_time, so a full stop from factor 1 takes exactly
/// stopping_time seconds.
struct SpeedGovernor {
    static double advance(double factor, double target, double stopping_time_s, double dt) {
        if (stopping_time_s <= 0.0) return target;
        const double step = dt / stopping_time_s;
        if (factor > target) return std::max(factor - step, target);
        if (factor < target) return std::min(factor + step, target);
        return factor;
    }
};

}  // namespace hazsearch
