#pragma once

#include <string>
#include <vector>

#include "hazsearch/geometry.hpp"
#include "hazsearch/human.hpp"

namespace hazsearch {

enum class DeviceType { ScannerZone, LightCurtain, PressureMat };

/// A safeguarding device. Scanner zones trigger on body overlap with the
/// region, pressure mats on a foot point inside the mat footprint, light
/// curtains on a body point crossing (or standing in) the curtain rectangle.
struct SafetyDevice {
    std::string id;
    DeviceType type = DeviceType::ScannerZone;
    Shape region = Box{};            // zone volume, mat box, or thin curtain box
    double effect_factor = 0.0;      // speed factor applied while triggered; 0 = stop
    double stopping_time_s = 0.3;    // ramp duration from factor 1 to 0
    bool latching = true;            // stays triggered until simulation reset
    std::vector<int> robots;         // affected robot indices; empty = all
};

inline const char* to_string(DeviceType t) {
    switch (t) {
        case DeviceType::ScannerZone: return "scanner_zone";
        case DeviceType::LightCurtain: return "light_curtain";
        case DeviceType::PressureMat: return "pressure_mat";
    }
    return "?";
}

inline bool device_affects_robot(const SafetyDevice& d, int robot) {
    if (d.robots.empty()) return true;
    for (int r : d.robots)
        if (r == robot) return true;
    return false;
}

namespace device_detail {

inline bool point_in_box_xy(const Vec3& p, const Box& b) {
    const Vec3 local = b.rot.inv_rotate(p - b.center);
    return std::abs(local.x) <= b.half.x && std::abs(local.y) <= b.half.y;
}

inline bool segment_crosses_box(const Vec3& p, const Vec3& q, const Box& b) {
    const Vec3 la = b.rot.inv_rotate(p - b.center);
    const Vec3 lb = b.rot.inv_rotate(q - b.center);
    return geom_detail::segment_aabb_intersect(la, lb, b.half);
}

}  // namespace device_detail

/// Presence test for one simulation substep. prev_body is the body at the
/// previous substep, used for crossing tests on light curtains so that fast
/// crossings between substeps are not missed.
inline bool device_detects(const SafetyDevice& d, const HumanBody& body, const HumanBody& prev_body) {
    switch (d.type) {
        case DeviceType::ScannerZone:
            for (const auto& ts : body.shapes) {
                if (!bounding_spheres_touch(ts.shape, d.region)) continue;
                if (shapes_touch(ts.shape, d.region)) return true;
            }
            return false;
        case DeviceType::PressureMat: {
            const Box& mat = std::get<Box>(d.region);
            return device_detail::point_in_box_xy(body.foot_left, mat) ||
                   device_detail::point_in_box_xy(body.foot_right, mat);
        }
        case DeviceType::LightCurtain: {
            const Box& curtain = std::get<Box>(d.region);
            for (std::size_t i = 0; i < body.shapes.size(); ++i) {
                if (shapes_touch(body.shapes[i].shape, d.region)) return true;
                // Reference-point crossing between substeps.
                const auto center = [](const Shape& s) -> Vec3 {
                    if (const auto* sp = std::get_if<Sphere>(&s)) return sp->center;
                    if (const auto* cp = std::get_if<Capsule>(&s)) return (cp->a + cp->b) * 0.5;
                    return std::get<Box>(s).center;
                };
                if (device_detail::segment_crosses_box(center(prev_body.shapes[i].shape),
                                                       center(body.shapes[i].shape), curtain))
                    return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace hazsearch
