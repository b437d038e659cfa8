#ifndef TORBRAID_COMMON_HPP
#define TORBRAID_COMMON_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace torbraid {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};
inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }

struct Mat2 {
    // row-major: [a b; c d]
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    Mat2() = default;
    Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    double max_abs() const {
        return std::max(std::max(std::fabs(a), std::fabs(b)), std::max(std::fabs(c), std::fabs(d)));
    }
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};
inline Vec3 operator*(double a, const Vec3& v) { return {a * v.x, a * v.y, a * v.z}; }

// 3x3 row-major matrix of component partials, m[i][j] = d(comp_i)/d(coord_j).
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double wrap_angle(double s) {
    s = std::fmod(s, kTwoPi);
    if (s < 0.0) s += kTwoPi;
    return s;
}

// Signed representative of an angle difference in (-pi, pi].
inline double wrap_diff(double d) {
    d = std::fmod(d, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    if (d > kPi) d -= kTwoPi;
    return d;
}

// Runs fn(i) for i in [0,n). With nthreads <= 1 the loop is sequential; otherwise
// the index range is split into contiguous blocks so results keyed by index are
// identical to the sequential run.
inline void parallel_for(std::size_t n, int nthreads, const std::function<void(std::size_t)>& fn) {
    if (nthreads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(nthreads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        const std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace torbraid

#endif
