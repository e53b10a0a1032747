#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <ostream>

#include "dqft/errors.hpp"

namespace dqft {

// Tolerance used for every "unit" check in the library.
inline constexpr double kUnitTolerance = 1e-9;
// Below this angle magnitude exp/log switch to their series forms.
inline constexpr double kSeriesThreshold = 1e-6;

template <std::floating_point T>
using Vec3 = std::array<T, 3>;

template <std::floating_point T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <std::floating_point T>
constexpr Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) noexcept {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <std::floating_point T>
T norm(const Vec3<T>& a) noexcept {
    return std::sqrt(dot(a, a));
}

template <std::floating_point T>
constexpr Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) noexcept {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <std::floating_point T>
constexpr Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) noexcept {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <std::floating_point T>
constexpr Vec3<T> operator*(T s, const Vec3<T>& a) noexcept {
    return {s * a[0], s * a[1], s * a[2]};
}

/// Hamilton quaternion w + xi + yj + zk.
///
/// Every constructed value has finite components; the checked constructor
/// throws dqft::invalid_argument otherwise, so all arithmetic on valid
/// values either stays finite or reports the overflow at the point it happens.
template <std::floating_point T>
class Quaternion {
public:
    using value_type = T;

    constexpr Quaternion() noexcept = default;

    Quaternion(T w, T x, T y, T z) : w_(w), x_(x), y_(y), z_(z) {
        if (!(std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z)))
            throw invalid_argument("quaternion components must be finite");
    }

    static Quaternion identity() noexcept { return from_raw(1, 0, 0, 0); }
    static Quaternion real(T w) { return Quaternion(w, 0, 0, 0); }
    static Quaternion pure(const Vec3<T>& v) { return Quaternion(0, v[0], v[1], v[2]); }
    static Quaternion pure(T x, T y, T z) { return Quaternion(0, x, y, z); }
    static Quaternion i() noexcept { return from_raw(0, 1, 0, 0); }
    static Quaternion j() noexcept { return from_raw(0, 0, 1, 0); }
    static Quaternion k() noexcept { return from_raw(0, 0, 0, 1); }

    constexpr T w() const noexcept { return w_; }
    constexpr T x() const noexcept { return x_; }
    constexpr T y() const noexcept { return y_; }
    constexpr T z() const noexcept { return z_; }
    constexpr Vec3<T> vec() const noexcept { return {x_, y_, z_}; }
    constexpr std::array<T, 4> coeffs() const noexcept { return {w_, x_, y_, z_}; }

    Quaternion operator-() const noexcept { return from_raw(-w_, -x_, -y_, -z_); }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.w_ + b.w_, a.x_ + b.x_, a.y_ + b.y_, a.z_ + b.z_);
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.w_ - b.w_, a.x_ - b.x_, a.y_ - b.y_, a.z_ - b.z_);
    }
    friend Quaternion operator*(T s, const Quaternion& a) {
        return Quaternion(s * a.w_, s * a.x_, s * a.y_, s * a.z_);
    }
    friend Quaternion operator*(const Quaternion& a, T s) { return s * a; }
    friend Quaternion operator/(const Quaternion& a, T s) {
        return Quaternion(a.w_ / s, a.x_ / s, a.y_ / s, a.z_ / s);
    }

    // Hamilton product: ij = k, jk = i, ki = j, i^2 = j^2 = k^2 = -1.
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return Quaternion(a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
                          a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
                          a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
                          a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_);
    }

    Quaternion& operator+=(const Quaternion& b) { return *this = *this + b; }
    Quaternion& operator-=(const Quaternion& b) { return *this = *this - b; }
    Quaternion& operator*=(T s) { return *this = *this * s; }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w_ << ", " << q.x_ << ", " << q.y_ << ", " << q.z_ << ')';
    }

private:
    static constexpr Quaternion from_raw(T w, T x, T y, T z) noexcept {
        Quaternion q;
        q.w_ = w;
        q.x_ = x;
        q.y_ = y;
        q.z_ = z;
        return q;
    }

    T w_{0};
    T x_{0};
    T y_{0};
    T z_{0};
};

using Quaterniond = Quaternion<double>;

template <std::floating_point T>
Quaternion<T> conjugate(const Quaternion<T>& q) {
    return Quaternion<T>(q.w(), -q.x(), -q.y(), -q.z());
}

// Inner product over the four components.
template <std::floating_point T>
T dot(const Quaternion<T>& a, const Quaternion<T>& b) noexcept {
    return a.w() * b.w() + a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
}

template <std::floating_point T>
T squared_norm(const Quaternion<T>& q) noexcept {
    return dot(q, q);
}

template <std::floating_point T>
T norm(const Quaternion<T>& q) noexcept {
    return std::sqrt(squared_norm(q));
}

template <std::floating_point T>
bool is_pure(const Quaternion<T>& q) noexcept {
    return q.w() == T(0);
}

template <std::floating_point T>
bool is_unit(const Quaternion<T>& q, T tol = T(kUnitTolerance)) noexcept {
    return std::abs(squared_norm(q) - T(1)) <= tol;
}

template <std::floating_point T>
struct ScalarVector {
    T scalar;
    Quaternion<T> vector;  // pure
};

/// s(q) + v(q) decomposition; the vector part is returned as a pure quaternion.
template <std::floating_point T>
ScalarVector<T> split(const Quaternion<T>& q) {
    return {q.w(), Quaternion<T>::pure(q.vec())};
}

template <std::floating_point T>
Quaternion<T> normalized(const Quaternion<T>& q) {
    const T n = norm(q);
    if (!(n > T(0))) throw degenerate_input("cannot normalize a zero quaternion");
    return q / n;
}

/// exp of a pure quaternion: cos|q| + sin|q| q/|q|; exp(0) = 1.
template <std::floating_point T>
Quaternion<T> exp(const Quaternion<T>& q) {
    if (!is_pure(q)) throw invalid_argument("quaternion exp requires a pure quaternion");
    const T angle = norm(q.vec());
    const T sinc = angle < T(kSeriesThreshold) ? T(1) - angle * angle / T(6)
                                               : std::sin(angle) / angle;
    return Quaternion<T>(std::cos(angle), sinc * q.x(), sinc * q.y(), sinc * q.z());
}

/// Principal logarithm of a unit quaternion, theta * v/|v| with
/// theta = atan2(|v|, w) in [0, pi]. No hemisphere flip: w < 0 inputs
/// produce angles above pi/2.
template <std::floating_point T>
Quaternion<T> log(const Quaternion<T>& q) {
    if (!is_unit(q)) throw invalid_argument("quaternion log requires a unit quaternion");
    const T s = norm(q.vec());
    if (s == T(0) && q.w() < T(0))
        return Quaternion<T>::pure(std::numbers::pi_v<T>, 0, 0);  // -1: axis fixed to +x
    T coeff;
    if (s < T(kSeriesThreshold) && q.w() > T(0)) {
        // atan(s/w)/s = (1/w)(1 - r^2/3 + ...), r = s/w
        const T r = s / q.w();
        coeff = (T(1) - r * r / T(3)) / q.w();
    } else {
        coeff = std::atan2(s, q.w()) / s;
    }
    return Quaternion<T>::pure(coeff * q.x(), coeff * q.y(), coeff * q.z());
}

}  // namespace dqft
