#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <thread>
#include <utility>
#include <vector>

#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"

namespace dqft {

enum class Side { Left, Right };

inline const char* to_string(Side side) noexcept { return side == Side::Left ? "left" : "right"; }

/// Pure unit quaternion mu playing the role of the imaginary unit in e^{-mu a}.
template <std::floating_point T>
class TransformAxis {
public:
    /// (i + j + k) / sqrt(3)
    TransformAxis() : mu_(Quaternion<T>::pure(unit_diagonal(), unit_diagonal(), unit_diagonal())) {}

    explicit TransformAxis(const Quaternion<T>& mu) : mu_(mu) {
        if (!is_pure(mu)) throw invalid_argument("transform axis must be a pure quaternion");
        if (std::abs(norm(mu) - T(1)) > T(1e-12))
            throw invalid_argument("transform axis must have unit length");
    }

    // Normalizes an arbitrary nonzero direction.
    static TransformAxis from_direction(const Vec3<T>& dir) {
        const T n = norm(dir);
        if (!(n > T(0)) || !std::isfinite(n))
            throw invalid_argument("transform axis direction must be finite and nonzero");
        return TransformAxis(Quaternion<T>::pure((T(1) / n) * dir));
    }

    const Quaternion<T>& mu() const noexcept { return mu_; }

    friend bool operator==(const TransformAxis&, const TransformAxis&) = default;

private:
    static T unit_diagonal() { return T(1) / std::sqrt(T(3)); }

    Quaternion<T> mu_;
};

/// Sample-domain sequence f(0..M-1).
template <std::floating_point T>
class DQSignal {
public:
    explicit DQSignal(std::vector<DualQuaternion<T>> samples, T sample_rate = T(1))
        : samples_(std::move(samples)), sample_rate_(sample_rate) {
        if (samples_.empty()) throw invalid_argument("signal must hold at least one sample");
        if (!(sample_rate_ > 0) || !std::isfinite(sample_rate_))
            throw invalid_argument("sample rate must be positive and finite");
    }

    std::size_t size() const noexcept { return samples_.size(); }
    const std::vector<DualQuaternion<T>>& samples() const noexcept { return samples_; }
    const DualQuaternion<T>& operator[](std::size_t i) const { return samples_[i]; }
    T sample_rate() const noexcept { return sample_rate_; }

private:
    std::vector<DualQuaternion<T>> samples_;
    T sample_rate_;
};

/// Frequency-domain sequence F(0..M-1), tagged with the side and axis that
/// produced it so the matching inverse is selected mechanically.
template <std::floating_point T>
class DQSpectrum {
public:
    DQSpectrum(std::vector<DualQuaternion<T>> coefficients, Side side, TransformAxis<T> axis,
               T sample_rate = T(1))
        : coefficients_(std::move(coefficients)), side_(side), axis_(axis), sample_rate_(sample_rate) {
        if (coefficients_.empty()) throw invalid_argument("spectrum must hold at least one bin");
    }

    std::size_t size() const noexcept { return coefficients_.size(); }
    const std::vector<DualQuaternion<T>>& coefficients() const noexcept { return coefficients_; }
    const DualQuaternion<T>& operator[](std::size_t k) const { return coefficients_[k]; }
    Side side() const noexcept { return side_; }
    const TransformAxis<T>& axis() const noexcept { return axis_; }
    T sample_rate() const noexcept { return sample_rate_; }

private:
    std::vector<DualQuaternion<T>> coefficients_;
    Side side_;
    TransformAxis<T> axis_;
    T sample_rate_;
};

struct TransformOptions {
    // Output bins are split into contiguous ranges across this many threads.
    // Each bin is summed in ascending sample order, so results do not depend on it.
    unsigned workers = 1;
};

/// cos(2 pi r / M), sin(2 pi r / M), reduced to the first octant so that
/// multiples of pi/4 and the quarter turns come out exact.
template <std::floating_point T>
std::pair<T, T> root_of_unity(std::uint64_t r, std::uint64_t m) {
    r %= m;
    // Work in units of 1/(8m) turns: 8r in [0, 8m).
    const std::uint64_t e = 8 * r;
    const std::uint64_t octant = e / m;
    const std::uint64_t rem = e % m;
    // Octant k covers [k pi/4, (k+1) pi/4]; odd octants measure a from the top edge.
    const bool odd = octant % 2 == 1;
    const T a = std::numbers::pi_v<T> / T(4) * T(odd ? m - rem : rem) / T(m);
    const T c = std::cos(a);
    const T s = std::sin(a);
    T cs, sn;
    switch (octant) {
        case 0: cs = c; sn = s; break;
        case 1: cs = s; sn = c; break;
        case 2: cs = -s; sn = c; break;
        case 3: cs = -c; sn = s; break;
        case 4: cs = -c; sn = -s; break;
        case 5: cs = -s; sn = -c; break;
        case 6: cs = s; sn = -c; break;
        default: cs = c; sn = -s; break;
    }
    return {cs, sn};
}

/// e^{-mu angle} = cos(angle) - sin(angle) mu, with zero dual part.
template <std::floating_point T>
DualQuaternion<T> kernel(const TransformAxis<T>& axis, T angle) {
    return DualQuaternion<T>(Quaternion<T>::real(std::cos(angle)) - std::sin(angle) * axis.mu());
}

namespace detail {

// Table of e^{-mu 2 pi r / M} for r in [0, M).
template <std::floating_point T>
std::vector<Quaternion<T>> kernel_table(const TransformAxis<T>& axis, std::size_t m) {
    std::vector<Quaternion<T>> table;
    table.reserve(m);
    for (std::size_t r = 0; r < m; ++r) {
        const auto [c, s] = root_of_unity<T>(r, m);
        table.push_back(Quaternion<T>::real(c) - s * axis.mu());
    }
    return table;
}

template <typename Fn>
void parallel_for_bins(std::size_t m, unsigned workers, Fn&& fn) {
    const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(m, 1));
    if (n == 1) {
        fn(std::size_t{0}, m);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::size_t chunk = (m + n - 1) / n;
    for (std::size_t begin = 0; begin < m; begin += chunk)
        pool.emplace_back([&fn, begin, end = std::min(m, begin + chunk)] { fn(begin, end); });
    for (auto& t : pool) t.join();
}

// out(t) = (1/sqrt M) sum_x K^{sign}(x t) in(x)   (left)
//        = (1/sqrt M) sum_x in(x) K^{sign}(x t)   (right)
// sign = -1 is the forward transform; +1 the inverse (conjugated kernel).
template <std::floating_point T>
std::vector<DualQuaternion<T>> naive_transform(const std::vector<DualQuaternion<T>>& in,
                                               const TransformAxis<T>& axis, Side side, int sign,
                                               const TransformOptions& opts) {
    const std::size_t m = in.size();
    std::vector<Quaternion<T>> table = kernel_table(axis, m);
    if (sign > 0)
        for (auto& k : table) k = conjugate(k);
    const T scale = T(1) / std::sqrt(T(m));
    std::vector<DualQuaternion<T>> out(m);
    parallel_for_bins(m, opts.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            DualQuaternion<T> acc;
            std::uint64_t r = 0;  // (x t) mod M, advanced incrementally
            for (std::size_t x = 0; x < m; ++x) {
                const Quaternion<T>& k = table[r];
                acc += side == Side::Right ? in[x] * k : k * in[x];
                r += t;
                if (r >= m) r -= m;
            }
            out[t] = scale * acc;
        }
    });
    return out;
}

}  // namespace detail

/// F(t) = (1/sqrt M) sum_x f(x) e^{-mu 2 pi x t / M}
template <std::floating_point T>
DQSpectrum<T> dqft_right(const DQSignal<T>& f, const TransformAxis<T>& axis = {},
                         const TransformOptions& opts = {}) {
    return {detail::naive_transform(f.samples(), axis, Side::Right, -1, opts), Side::Right, axis,
            f.sample_rate()};
}

/// F(t) = (1/sqrt M) sum_x e^{-mu 2 pi x t / M} f(x)
template <std::floating_point T>
DQSpectrum<T> dqft_left(const DQSignal<T>& f, const TransformAxis<T>& axis = {},
                        const TransformOptions& opts = {}) {
    return {detail::naive_transform(f.samples(), axis, Side::Left, -1, opts), Side::Left, axis,
            f.sample_rate()};
}

template <std::floating_point T>
DQSpectrum<T> dqft(const DQSignal<T>& f, Side side, const TransformAxis<T>& axis = {},
                   const TransformOptions& opts = {}) {
    return side == Side::Right ? dqft_right(f, axis, opts) : dqft_left(f, axis, opts);
}

/// f(x) = (1/sqrt M) sum_t F(t) e^{+mu 2 pi x t / M}
template <std::floating_point T>
DQSignal<T> idqft_right(const DQSpectrum<T>& spectrum, const TransformOptions& opts = {}) {
    if (spectrum.side() != Side::Right)
        throw side_mismatch("idqft_right applied to a left-sided spectrum");
    return DQSignal<T>(
        detail::naive_transform(spectrum.coefficients(), spectrum.axis(), Side::Right, +1, opts),
        spectrum.sample_rate());
}

/// f(x) = (1/sqrt M) sum_t e^{+mu 2 pi x t / M} F(t)
template <std::floating_point T>
DQSignal<T> idqft_left(const DQSpectrum<T>& spectrum, const TransformOptions& opts = {}) {
    if (spectrum.side() != Side::Left)
        throw side_mismatch("idqft_left applied to a right-sided spectrum");
    return DQSignal<T>(
        detail::naive_transform(spectrum.coefficients(), spectrum.axis(), Side::Left, +1, opts),
        spectrum.sample_rate());
}

// Inverse matching the spectrum's recorded side.
template <std::floating_point T>
DQSignal<T> idqft(const DQSpectrum<T>& spectrum, const TransformOptions& opts = {}) {
    return spectrum.side() == Side::Right ? idqft_right(spectrum, opts) : idqft_left(spectrum, opts);
}

// Sum of squared 8-component norms.
template <std::floating_point T>
T energy(const std::vector<DualQuaternion<T>>& values) noexcept {
    T e = 0;
    for (const auto& v : values) e += squared_norm8(v);
    return e;
}

}  // namespace dqft
