#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <ostream>

#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"

namespace dqft {

/// a + b eps with eps^2 = 0.
template <std::floating_point T>
struct DualNumber {
    T real{0};
    T dual{0};

    friend constexpr bool operator==(const DualNumber&, const DualNumber&) noexcept = default;
};

/// q_r + q_d eps. Unit dual-quaternions (|q_r| = 1, <q_r, q_d> = 0) encode
/// rigid transforms.
template <std::floating_point T>
class DualQuaternion {
public:
    using value_type = T;

    constexpr DualQuaternion() noexcept = default;
    constexpr DualQuaternion(const Quaternion<T>& real, const Quaternion<T>& dual) noexcept
        : real_(real), dual_(dual) {}
    // Embeds a quaternion with zero dual part.
    constexpr explicit DualQuaternion(const Quaternion<T>& real) noexcept : real_(real) {}

    static DualQuaternion identity() noexcept { return DualQuaternion(Quaternion<T>::identity()); }
    // p = 1 + eps (0, v)
    static DualQuaternion point(const Vec3<T>& v) {
        return DualQuaternion(Quaternion<T>::identity(), Quaternion<T>::pure(v));
    }
    static DualQuaternion from_coeffs(const std::array<T, 8>& c) {
        return DualQuaternion(Quaternion<T>(c[0], c[1], c[2], c[3]),
                              Quaternion<T>(c[4], c[5], c[6], c[7]));
    }

    constexpr const Quaternion<T>& real() const noexcept { return real_; }
    constexpr const Quaternion<T>& dual() const noexcept { return dual_; }

    // (wr, xr, yr, zr, wd, xd, yd, zd)
    constexpr std::array<T, 8> coeffs() const noexcept {
        return {real_.w(), real_.x(), real_.y(), real_.z(),
                dual_.w(), dual_.x(), dual_.y(), dual_.z()};
    }

    DualQuaternion operator-() const noexcept { return {-real_, -dual_}; }

    friend DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
        return {a.real_ + b.real_, a.dual_ + b.dual_};
    }
    friend DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
        return {a.real_ - b.real_, a.dual_ - b.dual_};
    }
    friend DualQuaternion operator*(T s, const DualQuaternion& a) {
        return {s * a.real_, s * a.dual_};
    }
    friend DualQuaternion operator*(const DualQuaternion& a, T s) { return s * a; }

    // eps^2 = 0 drops the q_d1 q_d2 term.
    friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
        return {a.real_ * b.real_, a.real_ * b.dual_ + a.dual_ * b.real_};
    }
    // Products with a quaternion embedded as q + 0 eps.
    friend DualQuaternion operator*(const DualQuaternion& a, const Quaternion<T>& q) {
        return {a.real_ * q, a.dual_ * q};
    }
    friend DualQuaternion operator*(const Quaternion<T>& q, const DualQuaternion& a) {
        return {q * a.real_, q * a.dual_};
    }

    DualQuaternion& operator+=(const DualQuaternion& b) { return *this = *this + b; }

    friend constexpr bool operator==(const DualQuaternion&, const DualQuaternion&) noexcept = default;

    friend std::ostream& operator<<(std::ostream& os, const DualQuaternion& a) {
        return os << a.real_ << " + eps" << a.dual_;
    }

private:
    Quaternion<T> real_{};
    Quaternion<T> dual_{};
};

using DualQuaterniond = DualQuaternion<double>;

// The three conjugates in use for dual-quaternions.
enum class ConjugateVariant {
    Quaternion = 1,  // q_r* + q_d* eps
    Dual = 2,        // q_r - q_d eps
    Combined = 3,    // q_r* - q_d* eps
};

template <std::floating_point T>
DualQuaternion<T> conjugate(const DualQuaternion<T>& a,
                            ConjugateVariant variant = ConjugateVariant::Quaternion) {
    switch (variant) {
        case ConjugateVariant::Quaternion:
            return {conjugate(a.real()), conjugate(a.dual())};
        case ConjugateVariant::Dual:
            return {a.real(), -a.dual()};
        case ConjugateVariant::Combined:
            return {conjugate(a.real()), -conjugate(a.dual())};
    }
    throw invalid_argument("unknown dual-quaternion conjugate variant");
}

template <std::floating_point T>
DualQuaternion<T> conjugate(const DualQuaternion<T>& a, int variant) {
    if (variant < 1 || variant > 3)
        throw invalid_argument("conjugate variant must be 1, 2 or 3");
    return conjugate(a, static_cast<ConjugateVariant>(variant));
}

// Euclidean inner product over all eight coefficients.
template <std::floating_point T>
T dot8(const DualQuaternion<T>& a, const DualQuaternion<T>& b) noexcept {
    return dot(a.real(), b.real()) + dot(a.dual(), b.dual());
}

template <std::floating_point T>
T squared_norm8(const DualQuaternion<T>& a) noexcept {
    return dot8(a, a);
}

/// zeta zeta* (variant 1), which collapses to the dual number
/// |q_r|^2 + 2<q_r, q_d> eps.
template <std::floating_point T>
DualNumber<T> magnitude(const DualQuaternion<T>& a) noexcept {
    return {squared_norm(a.real()), T(2) * dot(a.real(), a.dual())};
}

template <std::floating_point T>
bool is_unit(const DualQuaternion<T>& a, T tol = T(kUnitTolerance)) noexcept {
    return std::abs(norm(a.real()) - T(1)) <= tol && std::abs(dot(a.real(), a.dual())) <= tol;
}

template <std::floating_point T>
void require_unit(const DualQuaternion<T>& a, const char* op) {
    if (!is_unit(a)) throw invalid_argument(std::string(op) + " requires a unit dual-quaternion");
}

/// Projects onto the unit dual-quaternions: scale by 1/|q_r|, then strip the
/// component of q_d along q_r. Idempotent.
template <std::floating_point T>
DualQuaternion<T> normalize(const DualQuaternion<T>& a) {
    const T n = norm(a.real());
    if (!(n > T(1e-12))) throw degenerate_input("dual-quaternion real part has |q_r| <= 1e-12");
    const Quaternion<T> r = a.real() / n;
    const Quaternion<T> d = a.dual() / n;
    return {r, d - dot(d, r) * r};
}

/// exp of a dual-quaternion whose real and dual parts are both pure.
///
/// The real part is the quaternion exponential of v = v(q_r); the dual part is
/// its derivative along u = v(q_d):
///   -sinc(phi) <v,u> + sinc(phi) u + h(phi) <v,u> v,   h = (cos phi - sinc phi) / phi^2
/// with phi = |v|. Both sinc and h switch to series below kSeriesThreshold,
/// so pure translations exp(eps t/2) = 1 + eps t/2 come out exact.
template <std::floating_point T>
DualQuaternion<T> exp(const DualQuaternion<T>& a) {
    if (!is_pure(a.real()) || !is_pure(a.dual()))
        throw invalid_argument("dual-quaternion exp requires pure real and dual parts");
    const Vec3<T> v = a.real().vec();
    const Vec3<T> u = a.dual().vec();
    const T phi = norm(v);
    const T vu = dot(v, u);
    const T c = std::cos(phi);
    T sinc, h;
    if (phi < T(kSeriesThreshold)) {
        const T p2 = phi * phi;
        sinc = T(1) - p2 / T(6);
        h = -T(1) / T(3) + p2 / T(30);
    } else {
        sinc = std::sin(phi) / phi;
        h = (c - sinc) / (phi * phi);
    }
    const Quaternion<T> real(c, sinc * v[0], sinc * v[1], sinc * v[2]);
    const Vec3<T> dv = sinc * u + (h * vu) * v;
    return {real, Quaternion<T>(-sinc * vu, dv[0], dv[1], dv[2])};
}

/// Principal logarithm of a unit dual-quaternion (inverse of exp above).
///
/// With v = v(log q_r), phi = |v| and q_d = (w_d, v_d):
///   u = v_d / sinc(phi) - w_d sinc(phi) v + g(phi) <v, v_d> v,
///   g = (cos phi - 1/sinc phi) / phi^2,
/// series below kSeriesThreshold. q_r = -1 (phi = pi) has no finite log.
template <std::floating_point T>
DualQuaternion<T> log(const DualQuaternion<T>& a) {
    require_unit(a, "dual-quaternion log");
    const Quaternion<T> lr = log(a.real());
    const Vec3<T> v = lr.vec();
    const Vec3<T> vd = a.dual().vec();
    const T wd = a.dual().w();
    const T phi = norm(v);
    T sinc, g;
    if (phi < T(kSeriesThreshold)) {
        const T p2 = phi * phi;
        sinc = T(1) - p2 / T(6);
        g = -T(2) / T(3) + p2 / T(45);
    } else {
        sinc = std::sin(phi) / phi;
        if (sinc < T(1e-12))
            throw degenerate_input("dual-quaternion log undefined for q_r = -1");
        g = (std::cos(phi) - T(1) / sinc) / (phi * phi);
    }
    const Vec3<T> u = (T(1) / sinc) * vd + (-wd * sinc + g * dot(v, vd)) * v;
    return {lr, Quaternion<T>::pure(u)};
}

template <std::floating_point T>
struct RigidTransform {
    Quaternion<T> rotation;  // unit
    Vec3<T> translation;
};

/// q_r = r, q_d = (1/2) (0, t) r.
template <std::floating_point T>
DualQuaternion<T> from_rotation_translation(const Quaternion<T>& rotation, const Vec3<T>& t) {
    if (!is_unit(rotation)) throw invalid_argument("rotation must be a unit quaternion");
    return {rotation, T(0.5) * (Quaternion<T>::pure(t) * rotation)};
}

template <std::floating_point T>
RigidTransform<T> to_rotation_translation(const DualQuaternion<T>& a) {
    require_unit(a, "to_rotation_translation");
    const Quaternion<T> t = T(2) * (a.dual() * conjugate(a.real()));
    return {a.real(), t.vec()};
}

/// p' = zeta p zeta^dagger with p = 1 + eps (0, v) and the combined conjugate
/// q_r* - q_d* eps; gives v' = R v + t.
template <std::floating_point T>
Vec3<T> transform_point(const DualQuaternion<T>& a, const Vec3<T>& v) {
    require_unit(a, "transform_point");
    const DualQuaternion<T> moved =
        a * DualQuaternion<T>::point(v) * conjugate(a, ConjugateVariant::Combined);
    return moved.dual().vec();
}

}  // namespace dqft
