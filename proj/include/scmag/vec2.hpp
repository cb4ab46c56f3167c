#pragma once

#include <cmath>

namespace scmag {

// A point or field vector in the wire cross-section plane. The wire runs
// along y; x is across the chip and z is the height above it.
struct Vec2 {
    double x = 0.0;
    double z = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; z += o.z; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; z -= o.z; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; z *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.z + b.z}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.z - b.z}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.z}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.z}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.z}; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.z / s}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.z * b.z; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.z); }
constexpr double norm2(Vec2 a) { return a.x * a.x + a.z * a.z; }

// Rotates by +90 degrees in the (x, z) plane. For an outward normal n this
// gives the counter-clockwise tangent n x y-hat = (-n_z, n_x).
constexpr Vec2 perp(Vec2 a) { return {-a.z, a.x}; }

}  // namespace scmag
