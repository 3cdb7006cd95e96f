#pragma once
#include <array>
#include <cmath>

namespace linkvol {

struct Vec2 {
    double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Vec3 {
    double x = 0, y = 0, z = 0;
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) {
    double n = norm(a);
    return n > 0 ? (1.0 / n) * a : a;
}

// One event point: time coordinate t plus spatial coordinates (x,y,z).
struct Point4 {
    double t = 0, x = 0, y = 0, z = 0;
    Vec3 spatial() const { return {x, y, z}; }
};

inline Point4 operator+(Point4 a, Point4 b) { return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Point4 operator-(Point4 a, Point4 b) { return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point4 operator*(double s, Point4 a) { return {s * a.t, s * a.x, s * a.y, s * a.z}; }

// Distance from point p to segment [a,b].
inline double point_segment_dist(Vec3 p, Vec3 a, Vec3 b) {
    Vec3 d = b - a;
    double dd = dot(d, d);
    if (dd == 0) return norm(p - a);
    double t = dot(p - a, d) / dd;
    t = t < 0 ? 0 : (t > 1 ? 1 : t);
    return norm(p - (a + t * d));
}

// Exact minimum distance between segments [p1,p2] and [q1,q2]
// (clamped closest-point parameters on both segments).
inline double segment_segment_dist(Vec3 p1, Vec3 p2, Vec3 q1, Vec3 q2) {
    Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
    double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s, t;
    if (a == 0 && e == 0) return norm(r);
    if (a == 0) {
        s = 0;
        t = std::fmin(1.0, std::fmax(0.0, f / e));
    } else {
        double c = dot(d1, r);
        if (e == 0) {
            t = 0;
            s = std::fmin(1.0, std::fmax(0.0, -c / a));
        } else {
            double b = dot(d1, d2), den = a * e - b * b;
            s = den != 0 ? std::fmin(1.0, std::fmax(0.0, (b * f - c * e) / den)) : 0.0;
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::fmin(1.0, std::fmax(0.0, -c / a));
            } else if (t > 1) {
                t = 1;
                s = std::fmin(1.0, std::fmax(0.0, (b - c) / a));
            }
        }
    }
    return norm((p1 + s * d1) - (q1 + t * d2));
}

} // namespace linkvol
