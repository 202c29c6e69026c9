#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hazsearch/math.hpp"

namespace hazsearch {

struct Sphere {
    Vec3 center;
    double radius = 0.0;
    bool operator==(const Sphere&) const = default;
};

/// Capsule: all points within `radius` of the segment [a, b].
struct Capsule {
    Vec3 a, b;
    double radius = 0.0;
    bool operator==(const Capsule&) const = default;
};

/// Oriented box: center, half-extents along the local axes, rotation to world.
struct Box {
    Vec3 center;
    Vec3 half;
    Rot3 rot;
    bool operator==(const Box&) const = default;
};

using Shape = std::variant<Sphere, Capsule, Box>;

struct InvalidShape : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void validate_shape(const Shape& s) {
    if (const auto* sp = std::get_if<Sphere>(&s)) {
        if (!(sp->radius > 0.0)) throw InvalidShape("sphere radius must be > 0");
    } else if (const auto* cp = std::get_if<Capsule>(&s)) {
        if (!(cp->radius > 0.0)) throw InvalidShape("capsule radius must be > 0");
    } else {
        const auto& b = std::get<Box>(s);
        if (!(b.half.x > 0.0 && b.half.y > 0.0 && b.half.z > 0.0))
            throw InvalidShape("box half-extents must be > 0");
        if (!b.rot.is_proper()) throw InvalidShape("box orientation is not a proper rotation");
    }
}

/// Minimal separation between two shapes with the closest surface points.
/// distance == 0 means touching or penetrating; witness points are only
/// meaningful while distance > 0.
struct ContactInfo {
    double distance = 0.0;
    Vec3 witness_a;
    Vec3 witness_b;
};

namespace geom_detail {

inline Vec3 closest_point_on_segment(const Vec3& a, const Vec3& b, const Vec3& p, double* t_out = nullptr) {
    const Vec3 ab = b - a;
    const double len2 = ab.norm2();
    double t = len2 > 0.0 ? clamp01((p - a).dot(ab) / len2) : 0.0;
    if (t_out) *t_out = t;
    return a + ab * t;
}

/// Closest points between segments [p1,q1] and [p2,q2] (Ericson, RTCD 5.1.9).
inline double closest_segment_segment(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2,
                                      Vec3& c1, Vec3& c2) {
    const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = d1.norm2(), e = d2.norm2(), f = d2.dot(r);
    constexpr double eps = 1e-12;
    double s, t;
    if (a <= eps && e <= eps) {
        s = t = 0.0;
    } else if (a <= eps) {
        s = 0.0;
        t = clamp01(f / e);
    } else {
        const double c = d1.dot(r);
        if (e <= eps) {
            t = 0.0;
            s = clamp01(-c / a);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            s = denom > eps ? clamp01((b * f - c * e) / denom) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-c / a);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((b - c) / a);
            }
        }
    }
    c1 = p1 + d1 * s;
    c2 = p2 + d2 * t;
    return (c1 - c2).norm();
}

/// Distance from a point (given in box-local coordinates) to the solid box.
inline double point_aabb_distance(const Vec3& p, const Vec3& half, Vec3* closest_local = nullptr) {
    const Vec3 c{std::clamp(p.x, -half.x, half.x),
                 std::clamp(p.y, -half.y, half.y),
                 std::clamp(p.z, -half.z, half.z)};
    if (closest_local) *closest_local = c;
    return (p - c).norm();
}

/// Distance from a world point to a solid oriented box, with witness on the box.
inline double point_box_distance(const Vec3& p, const Box& box, Vec3* witness = nullptr) {
    const Vec3 local = box.rot.inv_rotate(p - box.center);
    Vec3 cl;
    const double d = point_aabb_distance(local, box.half, &cl);
    if (witness) *witness = box.rot * cl + box.center;
    return d;
}

/// Segment vs axis-aligned box overlap via the slab method (solid box).
inline bool segment_aabb_intersect(const Vec3& p, const Vec3& q, const Vec3& half) {
    double tmin = 0.0, tmax = 1.0;
    const Vec3 d = q - p;
    const double pc[3] = {p.x, p.y, p.z};
    const double dc[3] = {d.x, d.y, d.z};
    const double hc[3] = {half.x, half.y, half.z};
    for (int i = 0; i < 3; ++i) {
        if (std::abs(dc[i]) < 1e-15) {
            if (pc[i] < -hc[i] || pc[i] > hc[i]) return false;
        } else {
            double t1 = (-hc[i] - pc[i]) / dc[i];
            double t2 = (hc[i] - pc[i]) / dc[i];
            if (t1 > t2) std::swap(t1, t2);
            tmin = std::max(tmin, t1);
            tmax = std::min(tmax, t2);
            if (tmin > tmax) return false;
        }
    }
    return true;
}

/// Distance from segment [a,b] to a solid oriented box.
/// The point-to-box distance is convex along the segment, so a golden-section
/// scan brackets the global minimum to machine precision.
inline double segment_box_distance(const Vec3& a, const Vec3& b, const Box& box,
                                   Vec3* seg_witness = nullptr, Vec3* box_witness = nullptr) {
    const Vec3 pa = box.rot.inv_rotate(a - box.center);
    const Vec3 pb = box.rot.inv_rotate(b - box.center);
    if (segment_aabb_intersect(pa, pb, box.half)) {
        // Penetrating: report the segment midpoint pushed to the box surface.
        const Vec3 mid = (pa + pb) * 0.5;
        Vec3 cl;
        point_aabb_distance(mid, box.half, &cl);
        if (seg_witness) *seg_witness = box.rot * mid + box.center;
        if (box_witness) *box_witness = box.rot * cl + box.center;
        return 0.0;
    }
    auto f = [&](double t) {
        const Vec3 p = pa + (pb - pa) * t;
        return point_aabb_distance(p, box.half);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    double t = (f1 < f2) ? x1 : x2;
    // Endpoints can win in degenerate cases.
    if (f(0.0) <= f(t)) t = 0.0;
    if (f(1.0) < f(t)) t = 1.0;
    const Vec3 p = pa + (pb - pa) * t;
    Vec3 cl;
    const double d = point_aabb_distance(p, box.half, &cl);
    if (seg_witness) *seg_witness = box.rot * p + box.center;
    if (box_witness) *box_witness = box.rot * cl + box.center;
    return d;
}

inline std::array<Vec3, 8> box_corners(const Box& b) {
    std::array<Vec3, 8> out;
    int i = 0;
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0})
            for (double sz : {-1.0, 1.0})
                out[i++] = b.center + b.rot * Vec3{sx * b.half.x, sy * b.half.y, sz * b.half.z};
    return out;
}

/// Separating axis test for two oriented boxes (15 axes).
inline bool boxes_overlap(const Box& a, const Box& b) {
    std::vector<Vec3> axes;
    axes.reserve(15);
    for (int i = 0; i < 3; ++i) axes.push_back(a.rot.col(i));
    for (int i = 0; i < 3; ++i) axes.push_back(b.rot.col(i));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec3 c = a.rot.col(i).cross(b.rot.col(j));
            if (c.norm2() > 1e-16) axes.push_back(c);
        }
    const auto ca = box_corners(a), cb = box_corners(b);
    for (const Vec3& ax : axes) {
        double amin = std::numeric_limits<double>::infinity(), amax = -amin;
        double bmin = amin, bmax = -amin;
        for (const Vec3& p : ca) {
            const double v = p.dot(ax);
            amin = std::min(amin, v);
            amax = std::max(amax, v);
        }
        for (const Vec3& p : cb) {
            const double v = p.dot(ax);
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
        }
        if (amax < bmin || bmax < amin) return false;
    }
    return true;
}

inline std::array<std::pair<Vec3, Vec3>, 12> box_edges(const Box& b) {
    const auto c = box_corners(b);
    // Corner index bit layout: (sx<<2)|(sy<<1)|sz with -1 -> 0, +1 -> 1.
    constexpr int e[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {0, 2}, {1, 3},
                              {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    std::array<std::pair<Vec3, Vec3>, 12> out;
    for (int i = 0; i < 12; ++i) out[i] = {c[e[i][0]], c[e[i][1]]};
    return out;
}

/// Exact distance between two disjoint oriented boxes: the closest feature
/// pair is vertex-face (covered by point-box queries) or edge-edge.
inline double box_box_distance(const Box& a, const Box& b, Vec3& wa, Vec3& wb) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& v : box_corners(a)) {
        Vec3 w;
        const double d = point_box_distance(v, b, &w);
        if (d < best) {
            best = d;
            wa = v;
            wb = w;
        }
    }
    for (const Vec3& v : box_corners(b)) {
        Vec3 w;
        const double d = point_box_distance(v, a, &w);
        if (d < best) {
            best = d;
            wa = w;
            wb = v;
        }
    }
    const auto ea = box_edges(a), eb = box_edges(b);
    for (const auto& [a1, a2] : ea)
        for (const auto& [b1, b2] : eb) {
            Vec3 c1, c2;
            const double d = closest_segment_segment(a1, a2, b1, b2, c1, c2);
            if (d < best) {
                best = d;
                wa = c1;
                wb = c2;
            }
        }
    return best;
}

/// Shrinks a center-line distance result by the surface radii of the shapes.
inline ContactInfo from_centerline(double center_dist, const Vec3& ca, const Vec3& cb,
                                   double ra, double rb) {
    ContactInfo out;
    if (center_dist <= ra + rb || center_dist <= 0.0) {
        out.distance = 0.0;
        out.witness_a = ca;
        out.witness_b = cb;
        return out;
    }
    const Vec3 dir = (cb - ca) / center_dist;
    out.distance = center_dist - ra - rb;
    out.witness_a = ca + dir * ra;
    out.witness_b = cb - dir * rb;
    return out;
}

}  // namespace geom_detail

inline ContactInfo distance(const Shape& sa, const Shape& sb);

namespace geom_detail {

inline ContactInfo dist_impl(const Sphere& a, const Sphere& b) {
    return from_centerline((b.center - a.center).norm(), a.center, b.center, a.radius, b.radius);
}

inline ContactInfo dist_impl(const Sphere& a, const Capsule& b) {
    const Vec3 cb = closest_point_on_segment(b.a, b.b, a.center);
    return from_centerline((cb - a.center).norm(), a.center, cb, a.radius, b.radius);
}

inline ContactInfo dist_impl(const Capsule& a, const Capsule& b) {
    Vec3 ca, cb;
    const double d = closest_segment_segment(a.a, a.b, b.a, b.b, ca, cb);
    return from_centerline(d, ca, cb, a.radius, b.radius);
}

inline ContactInfo dist_impl(const Sphere& a, const Box& b) {
    Vec3 w;
    const double d = point_box_distance(a.center, b, &w);
    return from_centerline(d, a.center, w, a.radius, 0.0);
}

inline ContactInfo dist_impl(const Capsule& a, const Box& b) {
    Vec3 ws, wb;
    const double d = segment_box_distance(a.a, a.b, b, &ws, &wb);
    return from_centerline(d, ws, wb, a.radius, 0.0);
}

inline ContactInfo dist_impl(const Box& a, const Box& b) {
    if (boxes_overlap(a, b)) {
        ContactInfo ci;
        ci.distance = 0.0;
        ci.witness_a = a.center;
        ci.witness_b = b.center;
        return ci;
    }
    ContactInfo ci;
    ci.distance = box_box_distance(a, b, ci.witness_a, ci.witness_b);
    return ci;
}

inline ContactInfo flipped(ContactInfo ci) {
    std::swap(ci.witness_a, ci.witness_b);
    return ci;
}

}  // namespace geom_detail

/// Minimal Euclidean separation between two shapes. Total over valid shapes,
/// symmetric in its arguments; penetration reports distance 0.
inline ContactInfo distance(const Shape& sa, const Shape& sb) {
    using namespace geom_detail;
    return std::visit(
        [](const auto& a, const auto& b) -> ContactInfo {
            using A = std::decay_t<decltype(a)>;
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<A, Sphere> && std::is_same_v<B, Sphere>)
                return dist_impl(a, b);
            else if constexpr (std::is_same_v<A, Sphere> && std::is_same_v<B, Capsule>)
                return dist_impl(a, b);
            else if constexpr (std::is_same_v<A, Capsule> && std::is_same_v<B, Sphere>)
                return flipped(dist_impl(b, a));
            else if constexpr (std::is_same_v<A, Capsule> && std::is_same_v<B, Capsule>)
                return dist_impl(a, b);
            else if constexpr (std::is_same_v<A, Sphere> && std::is_same_v<B, Box>)
                return dist_impl(a, b);
            else if constexpr (std::is_same_v<A, Box> && std::is_same_v<B, Sphere>)
                return flipped(dist_impl(b, a));
            else if constexpr (std::is_same_v<A, Capsule> && std::is_same_v<B, Box>)
                return dist_impl(a, b);
            else if constexpr (std::is_same_v<A, Box> && std::is_same_v<B, Capsule>)
                return flipped(dist_impl(b, a));
            else
                return dist_impl(a, b);
        },
        sa, sb);
}

/// True when the two shapes touch or penetrate (grazing counts as contact).
inline bool shapes_touch(const Shape& a, const Shape& b) { return distance(a, b).distance <= 0.0; }

/// Conservative bounding-sphere prefilter; false guarantees no contact.
inline bool bounding_spheres_touch(const Shape& a, const Shape& b, double margin = 0.0) {
    auto bound = [](const Shape& s, Vec3& c, double& r) {
        if (const auto* sp = std::get_if<Sphere>(&s)) {
            c = sp->center;
            r = sp->radius;
        } else if (const auto* cp = std::get_if<Capsule>(&s)) {
            c = (cp->a + cp->b) * 0.5;
            r = (cp->b - cp->a).norm() * 0.5 + cp->radius;
        } else {
            const auto& bx = std::get<Box>(s);
            c = bx.center;
            r = bx.half.norm();
        }
    };
    Vec3 ca, cb;
    double ra, rb;
    bound(a, ca, ra);
    bound(b, cb, rb);
    return (cb - ca).norm2() <= (ra + rb + margin) * (ra + rb + margin);
}

/// True iff the segment pq intersects (touches counts) any barrier shape.
/// Degenerate segments (p == q) are never blocked.
inline bool segment_blocked(const Vec3& p, const Vec3& q, std::span<const Shape> barriers) {
    if ((q - p).norm2() <= 0.0) return false;
    constexpr double tol = 1e-12;
    for (const Shape& s : barriers) {
        if (const auto* sp = std::get_if<Sphere>(&s)) {
            const Vec3 c = geom_detail::closest_point_on_segment(p, q, sp->center);
            if ((c - sp->center).norm() <= sp->radius + tol) return true;
        } else if (const auto* cp = std::get_if<Capsule>(&s)) {
            Vec3 c1, c2;
            if (geom_detail::closest_segment_segment(p, q, cp->a, cp->b, c1, c2) <= cp->radius + tol)
                return true;
        } else {
            const auto& b = std::get<Box>(s);
            if (geom_detail::segment_box_distance(p, q, b) <= tol) return true;
        }
    }
    return false;
}

}  // namespace hazsearch
