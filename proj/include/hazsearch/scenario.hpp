#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hazsearch/arm.hpp"
#include "hazsearch/body_regions.hpp"
#include "hazsearch/devices.hpp"
#include "hazsearch/human.hpp"
#include "hazsearch/robot.hpp"

namespace hazsearch {

/// A static workplace shape. Shapes marked as barriers additionally count as
/// separating geometry for the danger heuristic; every static shape blocks
/// walking and arm motion.
struct StaticShape {
    std::string name;
    Shape shape;
    bool barrier = true;
};

/// Declarative description of one workplace: geometry, robots, safeguards,
/// the human start pose, and the body-region table in effect.
struct Scenario {
    std::string name;
    std::string description;
    std::vector<StaticShape> statics;
    std::vector<RobotModel> robots;
    std::vector<SafetyDevice> devices;
    HumanPose spawn;
    HumanParams human;
    ArmModel arm;
    int reach_budget = 1500;
    std::string regions_ref = "default";
    BodyRegionTable regions = default_body_regions();
    std::vector<int> witness_actions;  // pinned hazard sequence, may be empty

    std::vector<Shape> static_shapes() const {
        std::vector<Shape> out;
        out.reserve(statics.size());
        for (const auto& s : statics) out.push_back(s.shape);
        return out;
    }

    std::vector<Shape> barrier_shapes() const {
        std::vector<Shape> out;
        for (const auto& s : statics)
            if (s.barrier) out.push_back(s.shape);
        return out;
    }

    int robot_index(const std::string& id) const {
        for (std::size_t i = 0; i < robots.size(); ++i)
            if (robots[i].id == id) return static_cast<int>(i);
        return -1;
    }
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::vector<std::string>& violations)
        : std::runtime_error(join(violations)), items(violations) {}
    std::vector<std::string> items;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "scenario validation failed:";
        for (const auto& e : v) s += "\n  - " + e;
        return s;
    }
};

/// Collect every violation instead of stopping at the first one.
inline std::vector<std::string> validate_scenario(const Scenario& sc) {
    std::vector<std::string> errs;
    auto check_shape = [&](const Shape& s, const std::string& what) {
        try {
            validate_shape(s);
        } catch (const InvalidShape& e) {
            errs.push_back(what + ": " + e.what());
        }
    };
    for (const auto& st : sc.statics) check_shape(st.shape, "static '" + st.name + "'");

    for (BodyRegion r : kAllRegions)
        if (!sc.regions.contains(r))
            errs.push_back(std::string("body-region table is missing '") + to_string(r) + "'");

    for (const auto& r : sc.robots) {
        const std::string who = "robot '" + r.id + "'";
        if (r.joints.empty()) errs.push_back(who + ": has no joints");
        for (const auto& l : r.links) {
            if (l.joint < 0 || l.joint >= static_cast<int>(r.joints.size()))
                errs.push_back(who + ": link attached to unknown joint " + std::to_string(l.joint));
            check_shape(Shape{l.shape}, who + " link");
        }
        const auto& t = r.trajectory;
        if (t.waypoints.empty()) {
            errs.push_back(who + ": trajectory has no waypoints");
            continue;
        }
        if (t.waypoints.front().time_s != 0.0) errs.push_back(who + ": first waypoint must be at t=0");
        for (std::size_t i = 0; i + 1 < t.waypoints.size(); ++i)
            if (!(t.waypoints[i].time_s < t.waypoints[i + 1].time_s))
                errs.push_back(who + ": waypoint timestamps must be strictly increasing");
        if (!(t.cycle_s > t.waypoints.back().time_s))
            errs.push_back(who + ": cycle_s must exceed the last waypoint timestamp");
        for (const auto& w : t.waypoints)
            if (w.q.size() != r.joints.size())
                errs.push_back(who + ": waypoint joint vector size " + std::to_string(w.q.size()) +
                               " != joint count " + std::to_string(r.joints.size()));
    }
    for (std::size_t i = 0; i < sc.robots.size(); ++i)
        for (std::size_t j = i + 1; j < sc.robots.size(); ++j)
            if (sc.robots[i].id == sc.robots[j].id)
                errs.push_back("duplicate robot id '" + sc.robots[i].id + "'");

    for (const auto& d : sc.devices) {
        for (int r : d.robots)
            if (r < 0 || r >= static_cast<int>(sc.robots.size()))
                errs.push_back("device '" + d.id + "' references unknown robot index " + std::to_string(r));
        if (d.effect_factor < 0.0 || d.effect_factor > 1.0)
            errs.push_back("device '" + d.id + "': effect factor must be in [0,1]");
        if ((d.type == DeviceType::PressureMat || d.type == DeviceType::LightCurtain) &&
            !std::holds_alternative<Box>(d.region))
            errs.push_back("device '" + d.id + "': region must be a box");
        check_shape(d.region, "device '" + d.id + "' region");
    }

    const auto statics = sc.static_shapes();
    if (body_intersects(human_body(sc.spawn, sc.human), statics))
        errs.push_back("human spawn pose intersects static geometry");

    for (int a : sc.witness_actions)
        if (a < 0 || a >= kNumActions)
            errs.push_back("witness action index " + std::to_string(a) + " out of range");

    return errs;
}

inline void validate_scenario_or_throw(const Scenario& sc) {
    const auto errs = validate_scenario(sc);
    if (!errs.empty()) throw ValidationError(errs);
}

}  // namespace hazsearch
