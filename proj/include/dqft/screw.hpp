#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <numbers>

#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"

namespace dqft {

/// Screw coordinates (theta, d, l, m) of a rigid motion: rotation theta about
/// the line with Pluecker coordinates (l, m), translation d along it.
template <std::floating_point T>
struct ScrewParameters {
    T theta{0};  // [0, 2 pi)
    T d{0};
    Vec3<T> l{1, 0, 0};
    Vec3<T> m{0, 0, 0};
};

template <std::floating_point T>
void validate(const ScrewParameters<T>& s) {
    const T two_pi = T(2) * std::numbers::pi_v<T>;
    if (!std::isfinite(s.theta) || !std::isfinite(s.d) || !(s.theta >= 0 && s.theta < two_pi))
        throw invalid_argument("screw angle must be finite and in [0, 2pi)");
    for (int i = 0; i < 3; ++i)
        if (!std::isfinite(s.l[i]) || !std::isfinite(s.m[i]))
            throw invalid_argument("screw line coordinates must be finite");
    if ((s.theta != 0 || s.d != 0) && std::abs(norm(s.l) - T(1)) > T(kUnitTolerance))
        throw invalid_argument("screw direction must be a unit vector");
    // Relative: near-zero angles put the axis far away and |m| gets large.
    if (std::abs(dot(s.l, s.m)) > T(kUnitTolerance) * std::max(T(1), norm(s.m)))
        throw invalid_argument("screw line violates the Pluecker condition <l, m> = 0");
}

/// Reads the screw off a unit dual-quaternion
///   (cos(theta/2), sin(theta/2) l) + eps (-(d/2) sin(theta/2), sin(theta/2) m + (d/2) cos(theta/2) l).
///
/// When sin(theta/2) vanishes the motion is a pure translation (or the identity):
/// theta = 0, d = |t|, l = t/|t| (+x for the identity), m = 0. A -1 real part is
/// flipped to +1 first so the returned angle stays below 2 pi.
template <std::floating_point T>
ScrewParameters<T> screw_from_dual_quaternion(const DualQuaternion<T>& a) {
    require_unit(a, "screw_from_dual_quaternion");
    const Vec3<T> vr = a.real().vec();
    const T s = norm(vr);
    if (s <= T(1e-12)) {
        const DualQuaternion<T> b = a.real().w() < 0 ? -a : a;
        const Vec3<T> t = to_rotation_translation(b).translation;
        const T dist = norm(t);
        ScrewParameters<T> out;
        out.d = dist;
        if (dist > 0) out.l = (T(1) / dist) * t;
        return out;
    }
    const T c = a.real().w();
    ScrewParameters<T> out;
    out.theta = T(2) * std::atan2(s, c);
    out.l = (T(1) / s) * vr;
    // d = <t, l> rather than -2 w_d / s: stays accurate as s -> 0.
    out.d = dot(to_rotation_translation(a).translation, out.l);
    const Vec3<T> m = (T(1) / s) * (a.dual().vec() - (out.d * c / T(2)) * out.l);
    // Residual <l, m> is rounding in <q_r, q_d> amplified by 1/s^2.
    out.m = m - dot(m, out.l) * out.l;
    return out;
}

template <std::floating_point T>
DualQuaternion<T> dual_quaternion_from_screw(const ScrewParameters<T>& screw) {
    validate(screw);
    const T half = screw.theta / T(2);
    const T s = std::sin(half);
    const T c = std::cos(half);
    const T hd = screw.d / T(2);
    const Quaternion<T> real(c, s * screw.l[0], s * screw.l[1], s * screw.l[2]);
    const Vec3<T> dv = s * screw.m + (hd * c) * screw.l;
    return {real, Quaternion<T>(-hd * s, dv[0], dv[1], dv[2])};
}

}  // namespace dqft
