#pragma once

// O(M log M) transform via symplectic decomposition.
//
// With mu2 a pure unit quaternion orthogonal to mu and mu3 = mu mu2, every
// quaternion splits as q = z1 + z2 mu2 with z1, z2 in span{1, mu}. Under a
// same-axis kernel K = e^{-mu a}:
//   K q = (K z1) + (K z2) mu2
//   q K = (z1 K) + (z2 conj(K)) mu2
// so each of z1, z2 is an ordinary complex sequence (mu standing in for i)
// and the transform reduces to four complex DFTs of length M: z1 and z2 of
// both the real and dual quaternion parts. The right-sided transforms run
// the z2 half with the opposite exponent sign.

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"
#include "dqft/spectral.hpp"

namespace dqft {

/// Orthonormal frame (mu, mu2, mu3) of the pure quaternions. mu2 is
/// Gram-Schmidt of the first of i, j, k whose overlap with mu is below 0.9.
struct SymplecticFrame {
    Vec3<double> mu;
    Vec3<double> mu2{};
    Vec3<double> mu3{};

    explicit SymplecticFrame(const TransformAxis<double>& axis) : mu(axis.mu().vec()) {
        for (int e = 0; e < 3; ++e) {
            Vec3<double> basis{0, 0, 0};
            basis[e] = 1;
            if (std::abs(mu[e]) < 0.9) {
                const Vec3<double> g = basis - mu[e] * mu;
                mu2 = (1.0 / norm(g)) * g;
                break;
            }
        }
        mu3 = cross(mu, mu2);
    }
};

namespace detail {

// FFTW's planner is not re-entrant; plan creation and destruction go through
// this lock. Executing an existing plan is thread-safe.
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

class FftwPlan {
public:
    // `count` contiguous transforms of length n, in-place on `data`.
    FftwPlan(int n, int count, fftw_complex* data, int direction) {
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = fftw_plan_many_dft(1, &n, count, data, nullptr, 1, n, data, nullptr, 1, n,
                                   direction, FFTW_ESTIMATE);
        if (!plan_) throw std::runtime_error("FFTW failed to create a plan");
    }
    FftwPlan(const FftwPlan&) = delete;
    FftwPlan& operator=(const FftwPlan&) = delete;
    ~FftwPlan() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

// sign = -1 forward (e^{-mu a}), +1 inverse.
inline std::vector<DualQuaterniond> fast_transform(const std::vector<DualQuaterniond>& in,
                                                   const TransformAxis<double>& axis, Side side,
                                                   int sign) {
    const std::size_t m = in.size();
    const SymplecticFrame frame(axis);
    const int n = static_cast<int>(m);
    // Layout: [z1 real | z1 dual | z2 real | z2 dual], each of length M.
    FftwBuffer buf(fftw_alloc_complex(4 * m));
    if (!buf) throw std::bad_alloc();
    fftw_complex* data = buf.get();

    auto scatter = [&](const Quaternion<double>& q, std::size_t z1, std::size_t z2) {
        const Vec3<double> v = q.vec();
        data[z1][0] = q.w();
        data[z1][1] = dot(v, frame.mu);
        data[z2][0] = dot(v, frame.mu2);
        data[z2][1] = dot(v, frame.mu3);
    };
    for (std::size_t x = 0; x < m; ++x) {
        scatter(in[x].real(), x, 2 * m + x);
        scatter(in[x].dual(), m + x, 3 * m + x);
    }

    // FFTW_FORWARD is e^{-i...}, matching sign = -1.
    const int z1_dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
    const int z2_dir = side == Side::Left ? z1_dir : (z1_dir == FFTW_FORWARD ? FFTW_BACKWARD : FFTW_FORWARD);
    if (z1_dir == z2_dir) {
        FftwPlan(n, 4, data, z1_dir).execute();
    } else {
        FftwPlan(n, 2, data, z1_dir).execute();
        FftwPlan(n, 2, data + 2 * m, z2_dir).execute();
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    auto gather = [&](std::size_t z1, std::size_t z2) {
        const Vec3<double> v = (scale * data[z1][1]) * frame.mu + (scale * data[z2][0]) * frame.mu2 +
                               (scale * data[z2][1]) * frame.mu3;
        return Quaternion<double>(scale * data[z1][0], v[0], v[1], v[2]);
    };
    std::vector<DualQuaterniond> out;
    out.reserve(m);
    for (std::size_t t = 0; t < m; ++t)
        out.emplace_back(gather(t, 2 * m + t), gather(m + t, 3 * m + t));
    return out;
}

}  // namespace detail

/// Same contract as dqft_left / dqft_right, computed in O(M log M).
inline DQSpectrum<double> dqft_fast(const DQSignal<double>& f, const TransformAxis<double>& axis,
                                    Side side) {
    return {detail::fast_transform(f.samples(), axis, side, -1), side, axis, f.sample_rate()};
}

/// Fast inverse for the spectrum's recorded side.
inline DQSignal<double> idqft_fast(const DQSpectrum<double>& spectrum) {
    return DQSignal<double>(
        detail::fast_transform(spectrum.coefficients(), spectrum.axis(), spectrum.side(), +1),
        spectrum.sample_rate());
}

}  // namespace dqft
