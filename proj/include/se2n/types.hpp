#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace se2n {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Point of R^2, used both for planar positions and for frequencies.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    double norm() const { return std::hypot(x, y); }
    double angle() const { return std::atan2(y, x); }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

inline Vec2 rotate(const Vec2& v, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Rotation by k * 2pi/N. Quarter turns are done exactly so that lattice
// points stay on the lattice.
inline Vec2 rotate_k(const Vec2& v, long k, int N) {
    long m = k % N;
    if (m < 0) m += N;
    if ((4 * m) % N == 0) {
        switch ((4 * m / N) % 4) {
            case 0: return v;
            case 1: return {-v.y, v.x};
            case 2: return {-v.x, -v.y};
            default: return {v.y, -v.x};
        }
    }
    return rotate(v, kTwoPi * static_cast<double>(m) / N);
}

inline Vec2 polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

inline int wrap(long k, int n) {
    long m = k % n;
    return static_cast<int>(m < 0 ? m + n : m);
}

}  // namespace se2n
