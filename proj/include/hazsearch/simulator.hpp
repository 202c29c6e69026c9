#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hazsearch/force.hpp"
#include "hazsearch/scenario.hpp"

namespace hazsearch {

struct InvalidScenario : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Human-robot contact observed during a simulation step, with the robot's
/// point speed at the moment of contact.
struct ContactEvent {
    int robot = 0;
    int link = 0;
    BodyRegion region = BodyRegion::Chest;
    Vec3 point;
    double robot_speed_mps = 0.0;
    bool operator==(const ContactEvent&) const = default;
};

struct RobotState {
    double phase_s = 0.0;
    double factor = 1.0;
    double payload_kg = 0.0;
    bool operator==(const RobotState&) const = default;
};

/// Full simulator snapshot. Value-copyable: restoring a saved state
/// reproduces identical subsequent evolution for identical actions.
struct SimState {
    double time_s = 0.0;
    HumanPose human;
    std::vector<RobotState> robots;
    std::vector<std::uint8_t> device_latched;
    std::vector<ContactEvent> last_contacts;  // contacts during the most recent step
    bool operator==(const SimState&) const = default;
};

/// Closest human-robot shape pair (body shapes only; the arm is handled by
/// the reachability check).
struct ClosestPair {
    double distance = std::numeric_limits<double>::infinity();
    Vec3 witness_human;
    Vec3 witness_robot;
    BodyRegion region = BodyRegion::Chest;
    int robot = -1;
    int link = -1;
};

/// Diagnostic view of one substep, for replay traces.
struct SubstepFrame {
    double time_s = 0.0;
    HumanPose human;
    std::vector<double> phases;
    std::vector<double> factors;
};

using SubstepObserver = std::function<void(const SubstepFrame&)>;

/// Deterministic time-stepped workplace simulator. One human action covers
/// action_duration_s of simulated time in fixed substeps; each substep
/// advances the human, evaluates the safety devices, advances the robots,
/// and processes grasp events, in that order.
class Simulator {
public:
    static constexpr double kActionDuration = 0.2;
    static constexpr double kSubstep = 0.01;
    static constexpr int kSubstepsPerAction = 20;
    static constexpr double kContactTol = 1e-3;  // 1 mm counts as contact
    static constexpr double kResumeTime = 0.5;   // ramp-up time after a zone clears

    explicit Simulator(Scenario sc) : sc_(std::move(sc)), statics_(sc_.static_shapes()) {
        validate_scenario_or_throw(sc_);
    }

    const Scenario& scenario() const { return sc_; }
    const std::vector<Shape>& statics() const { return statics_; }

    /// Initial state s0: human at spawn, robots at phase 0 with factor 1,
    /// all devices untriggered. Throws InvalidScenario if s0 is already
    /// unsafe (human in forceful contact with a robot).
    SimState reset() const {
        SimState s;
        s.robots.assign(sc_.robots.size(), RobotState{});
        s.device_latched.assign(sc_.devices.size(), 0);
        s.human = sc_.spawn;
        detect_contacts(s);
        for (const ContactEvent& c : s.last_contacts) {
            const auto& rp = sc_.regions.at(c.region);
            const auto& robot = sc_.robots[c.robot];
            if (collision_force(c.robot_speed_mps, rp, robot.moving_mass_kg(),
                                s.robots[c.robot].payload_kg) > rp.max_force_n)
                throw InvalidScenario("scenario '" + sc_.name + "': initial state is already unsafe");
        }
        s.last_contacts.clear();
        return s;
    }

    /// Transition function: advance one human action (200 ms in 10 ms
    /// substeps). Deterministic: identical (state, action) pairs yield
    /// identical results.
    SimState step(const SimState& state, const HumanAction& action,
                  const SubstepObserver& observer = {}) const {
        SimState s = state;
        s.last_contacts.clear();
        HumanBody body = human_body(s.human, sc_.human);
        for (int sub = 0; sub < kSubstepsPerAction; ++sub) {
            const HumanBody prev_body = body;

            // (1) human locomotion and posture
            s.human = apply_action_slice(s.human, action, kSubstep, statics_, sc_.human, sub == 0);
            body = human_body(s.human, sc_.human);

            // (2) safety devices and speed governors
            for (std::size_t d = 0; d < sc_.devices.size(); ++d) {
                if (s.device_latched[d]) continue;
                if (device_detects(sc_.devices[d], body, prev_body) && sc_.devices[d].latching)
                    s.device_latched[d] = 1;
            }
            for (std::size_t r = 0; r < s.robots.size(); ++r) {
                double target = 1.0;
                double ramp = kResumeTime;
                bool constrained = false;
                for (std::size_t d = 0; d < sc_.devices.size(); ++d) {
                    const auto& dev = sc_.devices[d];
                    if (!device_affects_robot(dev, static_cast<int>(r))) continue;
                    const bool active = s.device_latched[d] || device_detects(dev, body, prev_body);
                    if (!active) continue;
                    target = std::min(target, dev.effect_factor);
                    ramp = constrained ? std::min(ramp, dev.stopping_time_s) : dev.stopping_time_s;
                    constrained = true;
                }
                s.robots[r].factor =
                    SpeedGovernor::advance(s.robots[r].factor, target, ramp, kSubstep);
            }

            // (3) robot trajectory playback
            std::vector<std::size_t> crossed;
            for (std::size_t r = 0; r < s.robots.size(); ++r) {
                const double prev_phase = s.robots[r].phase_s;
                s.robots[r].phase_s += kSubstep * s.robots[r].factor;

                // (4) grasp/release events at crossed waypoints
                waypoints_crossed(sc_.robots[r].trajectory, prev_phase, s.robots[r].phase_s, crossed);
                for (std::size_t w : crossed) {
                    const auto& wp = sc_.robots[r].trajectory.waypoints[w];
                    if (wp.event == GraspEvent::Grasp) s.robots[r].payload_kg = wp.payload_kg;
                    if (wp.event == GraspEvent::Release) s.robots[r].payload_kg = 0.0;
                }
            }

            s.time_s += kSubstep;
            detect_contacts_into(s, body);

            if (observer) {
                SubstepFrame f;
                f.time_s = s.time_s;
                f.human = s.human;
                for (const auto& rs : s.robots) {
                    f.phases.push_back(rs.phase_s);
                    f.factors.push_back(rs.factor);
                }
                observer(f);
            }
        }
        return s;
    }

    /// World capsules of all robot links, annotated with robot/link indices.
    std::vector<RobotLinkShape> link_shapes(const SimState& s) const {
        std::vector<RobotLinkShape> out;
        for (std::size_t r = 0; r < sc_.robots.size(); ++r) {
            const auto& robot = sc_.robots[r];
            const auto q = sample_trajectory(robot.trajectory, s.robots[r].phase_s);
            const auto frames = forward_kinematics(robot, q);
            for (std::size_t l = 0; l < robot.links.size(); ++l)
                out.push_back({link_world_shape(robot, frames, static_cast<int>(l)),
                               static_cast<int>(r), static_cast<int>(l)});
        }
        return out;
    }

    /// Magnitude of the instantaneous velocity of a material point on a
    /// link: central finite difference of the nominal trajectory over one
    /// substep, scaled by the robot's current speed factor.
    double robot_point_speed(const SimState& s, int robot, int link, const Vec3& world_point) const {
        const auto& r = sc_.robots[robot];
        const double tau = s.robots[robot].phase_s;
        const int joint = r.links[link].joint;

        const auto frames_now = forward_kinematics(r, sample_trajectory(r.trajectory, tau));
        const Vec3 local = frames_now[joint].inverse().apply(world_point);

        const double h = kSubstep;
        const auto fp = forward_kinematics(r, sample_trajectory(r.trajectory, tau + 0.5 * h));
        const auto fm = forward_kinematics(r, sample_trajectory(r.trajectory, tau - 0.5 * h));
        const double nominal = (fp[joint].apply(local) - fm[joint].apply(local)).norm() / h;
        return nominal * s.robots[robot].factor;
    }

    /// Closest pair between the human body shapes and all robot links.
    ClosestPair closest_human_robot(const SimState& s) const {
        const HumanBody body = human_body(s.human, sc_.human);
        const auto links = link_shapes(s);
        ClosestPair best;
        for (const auto& ts : body.shapes)
            for (const auto& l : links) {
                const ContactInfo ci = distance(ts.shape, Shape{l.shape});
                if (ci.distance < best.distance) {
                    best.distance = ci.distance;
                    best.witness_human = ci.witness_a;
                    best.witness_robot = ci.witness_b;
                    best.region = ts.region;
                    best.robot = l.robot;
                    best.link = l.link;
                }
            }
        return best;
    }

private:
    void detect_contacts(SimState& s) const { detect_contacts_into(s, human_body(s.human, sc_.human)); }

    void detect_contacts_into(SimState& s, const HumanBody& body) const {
        const auto links = link_shapes(s);
        for (const auto& ts : body.shapes)
            for (const auto& l : links) {
                if (!bounding_spheres_touch(ts.shape, Shape{l.shape}, kContactTol)) continue;
                const ContactInfo ci = distance(ts.shape, Shape{l.shape});
                if (ci.distance > kContactTol) continue;
                ContactEvent ev;
                ev.robot = l.robot;
                ev.link = l.link;
                ev.region = ts.region;
                ev.point = (ci.witness_a + ci.witness_b) * 0.5;
                ev.robot_speed_mps = robot_point_speed(s, l.robot, l.link, ev.point);
                upsert_contact(s.last_contacts, ev);
            }
    }

    /// Keep one event per (region, robot, link): the fastest observed.
    static void upsert_contact(std::vector<ContactEvent>& events, const ContactEvent& ev) {
        for (auto& e : events) {
            if (e.robot == ev.robot && e.link == ev.link && e.region == ev.region) {
                if (ev.robot_speed_mps > e.robot_speed_mps) e = ev;
                return;
            }
        }
        events.push_back(ev);
    }

    Scenario sc_;
    std::vector<Shape> statics_;
};

}  // namespace hazsearch
