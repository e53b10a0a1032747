#include <gtest/gtest.h>

#include "dqft/filters.hpp"
#include "dqft/signal_io.hpp"
#include "oracles.hpp"

using dqft::DQSignal;
using dqft::DualQuaterniond;
using dqft::FrequencyMask;
using dqft::Side;

namespace {

std::vector<double> gains(std::initializer_list<double> g) { return g; }

DualQuaterniond mean_of(const std::vector<DualQuaterniond>& s) {
    std::array<long double, 8> acc{};
    for (const auto& q : s)
        for (int c = 0; c < 8; ++c) acc[c] += q.coeffs()[c];
    std::array<double, 8> out{};
    for (int c = 0; c < 8; ++c) out[c] = double(acc[c] / s.size());
    return DualQuaterniond::from_coeffs(out);
}

}  // namespace

TEST(Filters, WrapDistance) {
    EXPECT_EQ(dqft::wrap_distance(0, 8), 0u);
    EXPECT_EQ(dqft::wrap_distance(1, 8), 1u);
    EXPECT_EQ(dqft::wrap_distance(4, 8), 4u);
    EXPECT_EQ(dqft::wrap_distance(7, 8), 1u);
    EXPECT_EQ(dqft::wrap_distance(3, 5), 2u);
}

TEST(Filters, MaskShapes) {
    EXPECT_EQ(dqft::make_low_pass(8, 1).gains(), gains({1, 1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(dqft::make_low_pass(8, 4).gains(), gains({1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(dqft::make_low_pass(8, 100).gains(), gains({1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(dqft::make_high_pass(8, 1).gains(), gains({0, 0, 1, 1, 1, 1, 1, 0}));
    EXPECT_EQ(dqft::make_band_pass(8, 1, 1).gains(), gains({0, 1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(dqft::make_band_pass(8, 0, 4).gains(), gains({1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(dqft::make_band_stop(8, 1, 2).gains(), gains({1, 0, 0, 1, 1, 1, 0, 0}));
    EXPECT_EQ(dqft::make_low_pass(1, 0).gains(), gains({1}));
    EXPECT_THROW(dqft::make_band_pass(8, 3, 2), dqft::invalid_argument);
    EXPECT_THROW(dqft::make_low_pass(0, 1), dqft::invalid_argument);
}

TEST(Filters, MasksAreComplementary) {
    for (std::size_t m : {1u, 7u, 8u, 64u})
        for (std::size_t c = 0; c <= m / 2 + 1; ++c) {
            const auto lo = dqft::make_low_pass(m, c), hi = dqft::make_high_pass(m, c);
            const auto bp = dqft::make_band_pass(m, c / 2, c), bs = dqft::make_band_stop(m, c / 2, c);
            for (std::size_t k = 0; k < m; ++k) {
                EXPECT_EQ(lo[k] + hi[k], 1.0);
                EXPECT_EQ(bp[k] + bs[k], 1.0);
            }
        }
}

TEST(Filters, MaskValidation) {
    EXPECT_THROW(FrequencyMask<double>({}), dqft::invalid_argument);
    EXPECT_THROW(FrequencyMask<double>({0.5, 1.5}), dqft::invalid_argument);
    EXPECT_THROW(FrequencyMask<double>({-0.1}), dqft::invalid_argument);
    EXPECT_NO_THROW(FrequencyMask<double>({0.25, 0.75}));
}

TEST(Filters, ApplyMask) {
    oracle::Random rng(70);
    const auto F = dqft::dqft_right(DQSignal<double>(rng.signal(8)), rng.axis());
    EXPECT_EQ(dqft::apply_mask(F, FrequencyMask<double>(std::vector<double>(8, 1.0))).coefficients(),
              F.coefficients());
    const auto zero = dqft::apply_mask(F, FrequencyMask<double>(std::vector<double>(8, 0.0)));
    for (const auto& c : zero.coefficients()) EXPECT_EQ(c, DualQuaterniond());
    const auto mask = dqft::make_band_stop(8, 1, 2);
    const auto once = dqft::apply_mask(F, mask);
    EXPECT_EQ(dqft::apply_mask(once, mask).coefficients(), once.coefficients());
    EXPECT_EQ(once.side(), Side::Right);
    EXPECT_EQ(once.axis(), F.axis());
    EXPECT_THROW(dqft::apply_mask(F, dqft::make_low_pass(7, 1)), dqft::invalid_argument);
}

TEST(Filters, AllPassIsIdentity) {
    oracle::Random rng(71);
    for (Side side : {Side::Left, Side::Right})
        for (std::size_t m : {1u, 9u, 64u}) {
            const DQSignal<double> f(rng.signal(m));
            const auto r = dqft::filter_signal(f, dqft::make_low_pass(m, m), side, rng.axis());
            EXPECT_LE(oracle::max_abs_diff(r.signal.samples(), f.samples()), 1e-10);
            EXPECT_EQ(r.report.kept_bins, m);
            EXPECT_NEAR(r.report.attenuated_energy_fraction, 0, 1e-12);
            EXPECT_FALSE(r.report.renormalized);
        }
}

TEST(Filters, LowPassZeroGivesMean) {
    oracle::Random rng(72);
    for (Side side : {Side::Left, Side::Right}) {
        const auto s = rng.signal(30);
        const auto mean = mean_of(s);
        const auto r = dqft::filter_signal(DQSignal<double>(s), dqft::make_low_pass(30, 0), side, rng.axis());
        EXPECT_EQ(r.report.kept_bins, 1u);
        for (const auto& q : r.signal.samples())
            for (int c = 0; c < 8; ++c) EXPECT_NEAR(q.coeffs()[c], mean.coeffs()[c], 1e-12);
    }
}

TEST(Filters, HighPassZeroRemovesMean) {
    oracle::Random rng(73);
    const auto s = rng.signal(25);
    const auto mean = mean_of(s);
    const auto r = dqft::filter_signal(DQSignal<double>(s), dqft::make_high_pass(25, 0), Side::Left);
    EXPECT_LE(oracle::max_abs_diff({mean_of(r.signal.samples())}, {DualQuaterniond()}), 1e-9);
    for (std::size_t x = 0; x < s.size(); ++x) {
        const auto back = r.signal[x] + mean;
        for (int c = 0; c < 8; ++c) EXPECT_NEAR(back.coeffs()[c], s[x].coeffs()[c], 1e-9);
    }
}

TEST(Filters, LowPlusHighReconstructs) {
    oracle::Random rng(74);
    const std::size_t m = 64;
    for (Side side : {Side::Left, Side::Right}) {
        const DQSignal<double> f(rng.unit_signal(m));
        const auto axis = rng.axis();
        for (std::size_t c = 0; c <= m / 2; ++c) {
            const auto lo = dqft::filter_signal(f, dqft::make_low_pass(m, c), side, axis).signal;
            const auto hi = dqft::filter_signal(f, dqft::make_high_pass(m, c), side, axis).signal;
            for (std::size_t x = 0; x < m; ++x) {
                const auto sum = lo[x] + hi[x];
                for (int e = 0; e < 8; ++e) EXPECT_NEAR(sum.coeffs()[e], f[x].coeffs()[e], 1e-9);
            }
        }
    }
}

TEST(Filters, EnergyNeverGrows) {
    oracle::Random rng(75);
    for (int n = 0; n < 50; ++n) {
        const std::size_t m = 1 + rng.index(50);
        std::vector<double> g(m);
        for (auto& v : g) v = rng.uniform(0, 1);
        const DQSignal<double> f(rng.signal(m));
        const auto r = dqft::filter_signal(f, FrequencyMask<double>(g), Side::Right);
        const double ein = dqft::energy(f.samples());
        const double eout = dqft::energy(r.signal.samples());
        EXPECT_LE(eout, ein + 1e-12);
        EXPECT_GE(r.report.attenuated_energy_fraction, 0);
        EXPECT_LE(r.report.attenuated_energy_fraction, 1);
        EXPECT_NEAR(r.report.attenuated_energy_fraction, 1 - eout / ein, 1e-9);
    }
}

TEST(Filters, RenormalizedOutputIsUnitAndContinuous) {
    oracle::Random rng(76);
    for (Side side : {Side::Left, Side::Right}) {
        // Smooth rigid motion with a little noise.
        const auto track = dqft::generate_synthetic(
            64, {{1, 0.8, 0.5, {0, 0, 1}}, {9, 0.05, 0.02, {1, 1, 0}}}, 30.0);
        const auto f = dqft::track_to_signal(track, dqft::Encoding::Rigid, true);
        dqft::FilterOptions opts;
        opts.renormalize = true;
        const auto r = dqft::filter_signal(f, dqft::make_low_pass(64, 3), side, {}, opts);
        EXPECT_TRUE(r.report.renormalized);
        for (std::size_t x = 0; x < 64; ++x) {
            EXPECT_TRUE(dqft::is_unit(r.signal[x]));
            if (x > 0) {
                EXPECT_GE(dot(r.signal[x].real(), r.signal[x - 1].real()), 0);
            }
        }
    }
}

TEST(Filters, RenormalizationReportsDegenerateIndex) {
    std::vector<DualQuaterniond> s(6, DualQuaterniond::identity());
    s[3] = -DualQuaterniond::identity();
    s[4] = DualQuaterniond();
    dqft::FilterOptions opts;
    opts.renormalize = true;
    // All-pass leaves sample 4 at zero.
    try {
        dqft::filter_signal(DQSignal<double>(s), dqft::make_low_pass(6, 3), Side::Right, {}, opts);
        FAIL() << "expected degenerate_sample";
    } catch (const dqft::degenerate_sample& e) {
        EXPECT_EQ(e.index(), 4u);
    }
}

TEST(Filters, FastPathMatchesNaive) {
    oracle::Random rng(77);
    const DQSignal<double> f(rng.signal(128));
    dqft::FilterOptions fast;
    fast.fast = true;
    for (Side side : {Side::Left, Side::Right}) {
        const auto mask = dqft::make_band_pass(128, 3, 20);
        const auto a = dqft::filter_signal(f, mask, side, {}, fast);
        const auto b = dqft::filter_signal(f, mask, side);
        EXPECT_LE(oracle::max_abs_diff(a.signal.samples(), b.signal.samples()), 1e-9);
        EXPECT_EQ(a.report.kept_bins, b.report.kept_bins);
    }
}

TEST(Filters, TwoToneSeparation) {
    const std::size_t m = 64;
    const dqft::SyntheticComponent slow{1, 0.6, 0.8, {0.3, 0.2, 1}};
    const dqft::SyntheticComponent fast{5, 0.2, 0.25, {1, -0.5, 0}};
    const auto both = dqft::track_to_signal(dqft::generate_synthetic(m, {slow, fast}), dqft::Encoding::Pure);
    const auto ref = dqft::track_to_signal(dqft::generate_synthetic(m, {slow}), dqft::Encoding::Pure);
    for (Side side : {Side::Left, Side::Right}) {
        const auto r = dqft::filter_signal(both, dqft::make_low_pass(m, 2), side);
        EXPECT_LE(oracle::max_abs_diff(r.signal.samples(), ref.samples()), 1e-6);
    }
}

TEST(Filters, WorkerCountDoesNotChangeBits) {
    oracle::Random rng(78);
    const DQSignal<double> f(rng.signal(200));
    dqft::FilterOptions one, many;
    many.transform.workers = 7;
    const auto mask = dqft::make_low_pass(200, 10);
    EXPECT_EQ(dqft::filter_signal(f, mask, Side::Left, {}, one).signal.samples(),
              dqft::filter_signal(f, mask, Side::Left, {}, many).signal.samples());
}
