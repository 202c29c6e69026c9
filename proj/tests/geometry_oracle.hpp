#pragma once

// Test-only brute-force distance oracle: dense surface sampling of one shape
// combined with exact point-to-shape queries against the other, followed by
// a pattern-search refinement of the best sample. Independent of the
// distance() implementation under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hazsearch/geometry.hpp"
#include "hazsearch/rng.hpp"

namespace oracle {

using hazsearch::Box;
using hazsearch::Capsule;
using hazsearch::Shape;
using hazsearch::Sphere;
using hazsearch::Vec3;

inline double point_to_shape(const Vec3& p, const Shape& s) {
    if (const auto* sp = std::get_if<Sphere>(&s)) {
        return std::max(0.0, (p - sp->center).norm() - sp->radius);
    }
    if (const auto* cp = std::get_if<Capsule>(&s)) {
        const Vec3 ab = cp->b - cp->a;
        const double len2 = ab.norm2();
        const double t = len2 > 0 ? hazsearch::clamp01((p - cp->a).dot(ab) / len2) : 0.0;
        return std::max(0.0, (p - (cp->a + ab * t)).norm() - cp->radius);
    }
    const auto& b = std::get<Box>(s);
    const Vec3 local = b.rot.inv_rotate(p - b.center);
    const Vec3 cl{std::clamp(local.x, -b.half.x, b.half.x),
                  std::clamp(local.y, -b.half.y, b.half.y),
                  std::clamp(local.z, -b.half.z, b.half.z)};
    return (local - cl).norm();
}

inline bool point_inside(const Vec3& p, const Shape& s) {
    if (const auto* sp = std::get_if<Sphere>(&s)) return (p - sp->center).norm() <= sp->radius;
    if (const auto* cp = std::get_if<Capsule>(&s)) {
        const Vec3 ab = cp->b - cp->a;
        const double len2 = ab.norm2();
        const double t = len2 > 0 ? hazsearch::clamp01((p - cp->a).dot(ab) / len2) : 0.0;
        return (p - (cp->a + ab * t)).norm() <= cp->radius;
    }
    const auto& b = std::get<Box>(s);
    const Vec3 l = b.rot.inv_rotate(p - b.center);
    return std::abs(l.x) <= b.half.x && std::abs(l.y) <= b.half.y && std::abs(l.z) <= b.half.z;
}

// Surface point of a shape patch at parameters (u, v) in [0,1]^2.
using PatchFn = std::function<Vec3(double u, double v)>;

inline std::vector<PatchFn> surface_patches(const Shape& s) {
    std::vector<PatchFn> patches;
    constexpr double pi = hazsearch::kPi;
    if (const auto* sp = std::get_if<Sphere>(&s)) {
        const Sphere sph = *sp;
        patches.push_back([sph, pi](double u, double v) {
            const double th = u * pi, ph = v * 2 * pi;
            return sph.center + Vec3{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                     std::cos(th)} *
                                    sph.radius;
        });
        return patches;
    }
    if (const auto* cp = std::get_if<Capsule>(&s)) {
        const Capsule cap = *cp;
        const Vec3 axis = (cap.b - cap.a).normalized();
        // Orthonormal frame around the axis.
        const Vec3 ref = std::abs(axis.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        const Vec3 e1 = axis.cross(ref).normalized();
        const Vec3 e2 = axis.cross(e1);
        patches.push_back([cap, e1, e2, pi](double u, double v) {
            const double ph = v * 2 * pi;
            const Vec3 radial = (e1 * std::cos(ph) + e2 * std::sin(ph)) * cap.radius;
            return cap.a + (cap.b - cap.a) * u + radial;
        });
        patches.push_back([cap, axis, e1, e2, pi](double u, double v) {
            const double th = u * pi / 2, ph = v * 2 * pi;
            const Vec3 dir = (e1 * std::cos(ph) + e2 * std::sin(ph)) * std::sin(th) - axis * std::cos(th);
            return cap.a + dir * cap.radius;
        });
        patches.push_back([cap, axis, e1, e2, pi](double u, double v) {
            const double th = u * pi / 2, ph = v * 2 * pi;
            const Vec3 dir = (e1 * std::cos(ph) + e2 * std::sin(ph)) * std::sin(th) + axis * std::cos(th);
            return cap.b + dir * cap.radius;
        });
        return patches;
    }
    const Box box = std::get<Box>(s);
    for (int axis = 0; axis < 3; ++axis) {
        for (double side : {-1.0, 1.0}) {
            patches.push_back([box, axis, side](double u, double v) {
                double c[3];
                c[axis] = side * (axis == 0 ? box.half.x : axis == 1 ? box.half.y : box.half.z);
                const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
                const double h1 = a1 == 0 ? box.half.x : a1 == 1 ? box.half.y : box.half.z;
                const double h2 = a2 == 0 ? box.half.x : a2 == 1 ? box.half.y : box.half.z;
                c[a1] = (2 * u - 1) * h1;
                c[a2] = (2 * v - 1) * h2;
                return box.center + box.rot * Vec3{c[0], c[1], c[2]};
            });
        }
    }
    return patches;
}

/// Brute-force minimum distance between two shapes. Grid resolution n, then
/// pattern-search refinement of the best few samples.
inline double brute_force_distance(const Shape& a, const Shape& b, int n = 64) {
    // Overlap detection: surface of one shape inside the other, or full
    // containment (probe a few interior points).
    const auto contains_any = [&](const Shape& src, const Shape& dst) {
        for (const auto& patch : surface_patches(src))
            for (int i = 0; i <= 8; ++i)
                for (int j = 0; j <= 8; ++j)
                    if (point_inside(patch(i / 8.0, j / 8.0), dst)) return true;
        return false;
    };
    if (contains_any(a, b) || contains_any(b, a)) return 0.0;

    const auto patches = surface_patches(a);
    struct Cand {
        double d;
        int patch;
        double u, v;
    };
    std::vector<Cand> cands;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t pi = 0; pi < patches.size(); ++pi) {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double u = static_cast<double>(i) / n, v = static_cast<double>(j) / n;
                const double d = point_to_shape(patches[pi](u, v), b);
                best = std::min(best, d);
                cands.push_back({d, static_cast<int>(pi), u, v});
            }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.d < y.d; });
    cands.resize(std::min<std::size_t>(cands.size(), 6));

    for (const Cand& c : cands) {
        double u = c.u, v = c.v;
        double d = c.d;
        double step = 1.0 / n;
        while (step > 1e-12) {
            bool improved = false;
            for (const auto& [du, dv] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step},
                                         {0.0, -step}, {step, step}, {-step, -step},
                                         {step, -step}, {-step, step}}) {
                const double nu = std::clamp(u + du, 0.0, 1.0);
                const double nv = std::clamp(v + dv, 0.0, 1.0);
                const double nd = point_to_shape(patches[c.patch](nu, nv), b);
                if (nd < d) {
                    d = nd;
                    u = nu;
                    v = nv;
                    improved = true;
                }
            }
            if (!improved) step *= 0.5;
        }
        best = std::min(best, d);
    }
    return best;
}

inline Shape random_shape(hazsearch::CounterRng& rng) {
    const Vec3 center{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    switch (rng.next_below(3)) {
        case 0:
            return Sphere{center, rng.uniform(0.05, 0.5)};
        case 1: {
            const Vec3 d{rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)};
            return Capsule{center, center + d, rng.uniform(0.05, 0.4)};
        }
        default: {
            const Vec3 axis{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const auto rot = axis.norm2() > 1e-6
                                 ? hazsearch::Rot3::axis_angle(axis, rng.uniform(0, 2 * hazsearch::kPi))
                                 : hazsearch::Rot3::identity();
            return Box{center,
                       {rng.uniform(0.05, 0.6), rng.uniform(0.05, 0.6), rng.uniform(0.05, 0.6)},
                       rot};
        }
    }
}

}  // namespace oracle
