#pragma once

#include <cmath>

namespace megalink {

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3& operator+=(Vec3 const& o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(Vec3 const& o)
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    friend constexpr Vec3 operator+(Vec3 a, Vec3 const& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 const& b) { return a -= b; }
    friend constexpr Vec3 operator-(Vec3 const& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 const& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3 operator*(Vec3 const& a, double s) { return s * a; }
    friend constexpr bool operator==(Vec3 const&, Vec3 const&) = default;
};

constexpr double dot(Vec3 const& a, Vec3 const& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 const& a)
{
    return std::sqrt(dot(a, a));
}

/// Angle between two non-zero vectors in radians, robust near 0 and pi.
inline double angle_between(Vec3 const& a, Vec3 const& b)
{
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

}  // namespace megalink
