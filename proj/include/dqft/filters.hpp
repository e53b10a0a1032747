#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/fast_transform.hpp"
#include "dqft/spectral.hpp"

namespace dqft {

// d(k) = min(k, M - k): DC and the bins next to M are both slow oscillations.
inline std::size_t wrap_distance(std::size_t k, std::size_t m) noexcept {
    return std::min(k, m - k);
}

/// Real per-bin gains in [0, 1].
template <std::floating_point T = double>
class FrequencyMask {
public:
    explicit FrequencyMask(std::vector<T> gains) : gains_(std::move(gains)) {
        if (gains_.empty()) throw invalid_argument("mask must cover at least one bin");
        for (T g : gains_)
            if (!std::isfinite(g) || g < T(0) || g > T(1))
                throw invalid_argument("mask gains must be finite and within [0, 1]");
    }

    std::size_t size() const noexcept { return gains_.size(); }
    T operator[](std::size_t k) const { return gains_[k]; }
    const std::vector<T>& gains() const noexcept { return gains_; }

    friend bool operator==(const FrequencyMask&, const FrequencyMask&) = default;

private:
    std::vector<T> gains_;
};

template <std::floating_point T>
FrequencyMask<T> complement(const FrequencyMask<T>& mask) {
    std::vector<T> g(mask.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = T(1) - mask[k];
    return FrequencyMask<T>(std::move(g));
}

namespace detail {

template <std::floating_point T, typename Pred>
FrequencyMask<T> mask_where(std::size_t m, Pred keep) {
    if (m == 0) throw invalid_argument("mask length must be positive");
    std::vector<T> g(m);
    for (std::size_t k = 0; k < m; ++k) g[k] = keep(wrap_distance(k, m)) ? T(1) : T(0);
    return FrequencyMask<T>(std::move(g));
}

}  // namespace detail

/// Keeps bins with d(k) <= cutoff; cutoff >= M/2 passes everything.
template <std::floating_point T = double>
FrequencyMask<T> make_low_pass(std::size_t m, std::size_t cutoff) {
    return detail::mask_where<T>(m, [cutoff](std::size_t d) { return d <= cutoff; });
}

/// Complement of make_low_pass with the same cutoff.
template <std::floating_point T = double>
FrequencyMask<T> make_high_pass(std::size_t m, std::size_t cutoff) {
    return complement(make_low_pass<T>(m, cutoff));
}

/// Keeps bins with lo <= d(k) <= hi.
template <std::floating_point T = double>
FrequencyMask<T> make_band_pass(std::size_t m, std::size_t lo, std::size_t hi) {
    if (lo > hi) throw invalid_argument("band requires lo <= hi");
    return detail::mask_where<T>(m, [lo, hi](std::size_t d) { return lo <= d && d <= hi; });
}

template <std::floating_point T = double>
FrequencyMask<T> make_band_stop(std::size_t m, std::size_t lo, std::size_t hi) {
    return complement(make_band_pass<T>(m, lo, hi));
}

// Real gains commute with dual-quaternions, so the side does not matter here.
template <std::floating_point T>
DQSpectrum<T> apply_mask(const DQSpectrum<T>& spectrum, const FrequencyMask<T>& mask) {
    if (mask.size() != spectrum.size())
        throw invalid_argument("mask length " + std::to_string(mask.size()) +
                               " does not match spectrum length " + std::to_string(spectrum.size()));
    std::vector<DualQuaternion<T>> out;
    out.reserve(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) out.push_back(mask[k] * spectrum[k]);
    return {std::move(out), spectrum.side(), spectrum.axis(), spectrum.sample_rate()};
}

struct FilterReport {
    std::size_t kept_bins = 0;  // bins with nonzero gain
    double attenuated_energy_fraction = 0;
    bool renormalized = false;
};

struct FilterOptions {
    bool renormalize = false;
    bool fast = false;  // FFT path (double precision only)
    TransformOptions transform{};
};

template <std::floating_point T>
struct FilterResult {
    DQSignal<T> signal;
    FilterReport report;
};

/// Normalizes every sample onto the unit dual-quaternions, flipping signs so
/// consecutive real parts satisfy <q_r(n), q_r(n-1)> >= 0.
template <std::floating_point T>
std::vector<DualQuaternion<T>> normalize_with_continuity(const std::vector<DualQuaternion<T>>& in) {
    std::vector<DualQuaternion<T>> out;
    out.reserve(in.size());
    for (std::size_t n = 0; n < in.size(); ++n) {
        DualQuaternion<T> q;
        try {
            q = normalize(in[n]);
        } catch (const degenerate_input&) {
            throw degenerate_sample(n, "real part vanishes, cannot renormalize");
        }
        if (n > 0 && dot(q.real(), out.back().real()) < T(0)) q = -q;
        out.push_back(q);
    }
    return out;
}

/// transform -> mask -> inverse, optionally renormalizing each output sample.
template <std::floating_point T>
FilterResult<T> filter_signal(const DQSignal<T>& f, const FrequencyMask<T>& mask, Side side,
                              const TransformAxis<T>& axis = {}, const FilterOptions& opts = {}) {
    if (mask.size() != f.size())
        throw invalid_argument("mask length does not match signal length");

    auto forward = [&]() -> DQSpectrum<T> {
        if constexpr (std::is_same_v<T, double>)
            if (opts.fast) return dqft_fast(f, axis, side);
        return dqft(f, side, axis, opts.transform);
    };
    auto inverse = [&](const DQSpectrum<T>& s) -> DQSignal<T> {
        if constexpr (std::is_same_v<T, double>)
            if (opts.fast) return idqft_fast(s);
        return idqft(s, opts.transform);
    };

    const DQSpectrum<T> spectrum = forward();
    const DQSpectrum<T> masked = apply_mask(spectrum, mask);
    DQSignal<T> out = inverse(masked);

    FilterReport report;
    report.kept_bins = static_cast<std::size_t>(
        std::count_if(mask.gains().begin(), mask.gains().end(), [](T g) { return g > T(0); }));
    const T before = energy(spectrum.coefficients());
    const T after = energy(masked.coefficients());
    report.attenuated_energy_fraction =
        before > T(0) ? std::clamp(double(T(1) - after / before), 0.0, 1.0) : 0.0;

    if (opts.renormalize) {
        out = DQSignal<T>(normalize_with_continuity(out.samples()), out.sample_rate());
        report.renormalized = true;
    }
    return {std::move(out), report};
}

}  // namespace dqft
