#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// arithmetic: products go through explicit real matrices over raw arrays,
// rotations through 3x3 matrices, transforms through double loops.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "dqft/dual_quaternion.hpp"
#include "dqft/spectral.hpp"

namespace oracle {

using Q4 = std::array<long double, 4>;
using Q8 = std::array<long double, 8>;
using Mat4 = std::array<std::array<long double, 4>, 4>;
using Mat8 = std::array<std::array<long double, 8>, 8>;

// Matrix of left multiplication by a: (a b) = L(a) b.
inline Mat4 left_matrix(const Q4& a) {
    const auto [w, x, y, z] = a;
    return {{{w, -x, -y, -z}, {x, w, -z, y}, {y, z, w, -x}, {z, -y, x, w}}};
}

inline Q4 mat_apply(const Mat4& m, const Q4& v) {
    Q4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r] += m[r][c] * v[c];
    return out;
}

inline Q4 qmul(const Q4& a, const Q4& b) { return mat_apply(left_matrix(a), b); }

// 8x8 real matrix of left multiplication by a dual-quaternion:
//   [ L(ar)   0    ]
//   [ L(ad)  L(ar) ]
inline Mat8 dual_left_matrix(const Q8& a) {
    const Mat4 lr = left_matrix({a[0], a[1], a[2], a[3]});
    const Mat4 ld = left_matrix({a[4], a[5], a[6], a[7]});
    Mat8 m{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            m[r][c] = lr[r][c];
            m[r + 4][c] = ld[r][c];
            m[r + 4][c + 4] = lr[r][c];
        }
    return m;
}

inline Q8 dqmul(const Q8& a, const Q8& b) {
    const Mat8 m = dual_left_matrix(a);
    Q8 out{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) out[r] += m[r][c] * b[c];
    return out;
}

inline Q8 to_raw(const dqft::DualQuaterniond& a) {
    const auto c = a.coeffs();
    Q8 out{};
    for (int i = 0; i < 8; ++i) out[i] = c[i];
    return out;
}

inline Q4 to_raw(const dqft::Quaterniond& a) { return {a.w(), a.x(), a.y(), a.z()}; }

inline long double max_abs_diff(const Q8& a, const dqft::DualQuaterniond& b) {
    const auto c = b.coeffs();
    long double e = 0;
    for (int i = 0; i < 8; ++i) e = std::max(e, std::abs(a[i] - (long double)c[i]));
    return e;
}

// Homogeneous 4x4 matrix of the rigid motion (unit rotation quaternion r, translation t).
inline Mat4 homogeneous(const Q4& r, const std::array<long double, 3>& t) {
    const auto [w, x, y, z] = r;
    Mat4 m{};
    m[0] = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y), t[0]};
    m[1] = {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x), t[1]};
    m[2] = {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y), t[2]};
    m[3] = {0, 0, 0, 1};
    return m;
}

// Homogeneous matrix of a unit dual-quaternion: R from q_r, t = 2 v(q_d q_r*).
inline Mat4 homogeneous(const dqft::DualQuaterniond& a) {
    const Q8 q = to_raw(a);
    const Q4 r{q[0], q[1], q[2], q[3]};
    const Q4 rc{q[0], -q[1], -q[2], -q[3]};
    const Q4 t = qmul({q[4], q[5], q[6], q[7]}, rc);
    return homogeneous(r, {2 * t[1], 2 * t[2], 2 * t[3]});
}

inline std::array<long double, 3> transform(const Mat4& m, const std::array<double, 3>& v) {
    std::array<long double, 3> out{};
    for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3];
    return out;
}

inline long double max_abs_diff(const Mat4& a, const Mat4& b) {
    long double e = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) e = std::max(e, std::abs(a[r][c] - b[r][c]));
    return e;
}

// exp of a dual-quaternion by its power series sum_n z^n / n!.
inline Q8 dq_exp_series(const Q8& z, int terms = 60) {
    Q8 term{1, 0, 0, 0, 0, 0, 0, 0};
    Q8 sum = term;
    for (int n = 1; n < terms; ++n) {
        term = dqmul(term, z);
        for (auto& c : term) c /= n;
        for (int i = 0; i < 8; ++i) sum[i] += term[i];
    }
    return sum;
}

// Direct evaluation of the four transform sums:
//   right: (1/sqrt M) sum_x f(x) e^{sign mu 2 pi x t / M}
//   left:  (1/sqrt M) sum_x e^{sign mu 2 pi x t / M} f(x)
// sign = -1 forward, +1 inverse.
inline std::vector<Q8> brute_force(const std::vector<dqft::DualQuaterniond>& f,
                                   const std::array<long double, 3>& mu, bool right, int sign) {
    const std::size_t m = f.size();
    const long double pi = std::numbers::pi_v<long double>;
    std::vector<Q8> out(m);
    for (std::size_t t = 0; t < m; ++t) {
        Q8 acc{};
        for (std::size_t x = 0; x < m; ++x) {
            const long double angle = 2 * pi * (long double)(x * t) / (long double)m;
            const long double s = std::sin(angle) * sign;
            const Q8 k{std::cos(angle), s * mu[0], s * mu[1], s * mu[2], 0, 0, 0, 0};
            const Q8 term = right ? dqmul(to_raw(f[x]), k) : dqmul(k, to_raw(f[x]));
            for (int i = 0; i < 8; ++i) acc[i] += term[i];
        }
        for (auto& c : acc) c /= std::sqrt((long double)m);
        out[t] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random generators

class Random {
public:
    explicit Random(std::uint64_t seed = 20240611) : gen_(seed) {}

    double uniform(double lo = -1, double hi = 1) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

    std::array<double, 3> vec3(double scale = 1) {
        return {scale * uniform(), scale * uniform(), scale * uniform()};
    }

    dqft::Quaterniond quaternion(double scale = 1) {
        return {scale * uniform(), scale * uniform(), scale * uniform(), scale * uniform()};
    }

    dqft::Quaterniond unit_quaternion() {
        std::normal_distribution<double> n;
        const double w = n(gen_), x = n(gen_), y = n(gen_), z = n(gen_);
        const double len = std::sqrt(w * w + x * x + y * y + z * z);
        return {w / len, x / len, y / len, z / len};
    }

    dqft::DualQuaterniond dual_quaternion(double scale = 1) { return {quaternion(scale), quaternion(scale)}; }

    dqft::DualQuaterniond unit_dual_quaternion(double translation_scale = 2) {
        return dqft::from_rotation_translation(unit_quaternion(), vec3(translation_scale));
    }

    std::vector<dqft::DualQuaterniond> signal(std::size_t m) {
        std::vector<dqft::DualQuaterniond> s;
        for (std::size_t i = 0; i < m; ++i) s.push_back(dual_quaternion());
        return s;
    }

    std::vector<dqft::DualQuaterniond> unit_signal(std::size_t m) {
        std::vector<dqft::DualQuaterniond> s;
        for (std::size_t i = 0; i < m; ++i) s.push_back(unit_dual_quaternion());
        return s;
    }

    dqft::TransformAxis<double> axis() { return dqft::TransformAxis<double>::from_direction(vec3()); }

private:
    std::mt19937_64 gen_;
};

template <typename Seq>
long double max_abs_diff(const std::vector<Q8>& a, const Seq& b) {
    long double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, max_abs_diff(a[i], b[i]));
    return e;
}

inline double max_abs_diff(const std::vector<dqft::DualQuaterniond>& a,
                           const std::vector<dqft::DualQuaterniond>& b) {
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto ca = a[i].coeffs(), cb = b[i].coeffs();
        for (int c = 0; c < 8; ++c) e = std::max(e, std::abs(ca[c] - cb[c]));
    }
    return e;
}

}  // namespace oracle
