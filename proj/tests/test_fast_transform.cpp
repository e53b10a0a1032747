#include <chrono>
#include <limits>

#include <gtest/gtest.h>

#include "dqft/fast_transform.hpp"
#include "oracles.hpp"

using dqft::DQSignal;
using dqft::DualQuaterniond;
using dqft::Quaterniond;
using dqft::Side;
using dqft::TransformAxis;

TEST(FastTransform, FrameIsOrthonormal) {
    oracle::Random rng(60);
    std::vector<TransformAxis<double>> axes{TransformAxis<double>(), TransformAxis<double>(Quaterniond::i()),
                                            TransformAxis<double>(Quaterniond::j())};
    for (int n = 0; n < 50; ++n) axes.push_back(rng.axis());
    for (const auto& axis : axes) {
        const dqft::SymplecticFrame fr(axis);
        EXPECT_NEAR(dqft::norm(fr.mu2), 1, 1e-15);
        EXPECT_NEAR(dqft::norm(fr.mu3), 1, 1e-15);
        EXPECT_NEAR(dqft::dot(fr.mu, fr.mu2), 0, 1e-15);
        EXPECT_NEAR(dqft::dot(fr.mu, fr.mu3), 0, 1e-15);
        EXPECT_NEAR(dqft::dot(fr.mu2, fr.mu3), 0, 1e-15);
    }
    // mu = i skips the x basis vector.
    const dqft::SymplecticFrame fi{TransformAxis<double>(Quaterniond::i())};
    EXPECT_EQ(fi.mu2, (dqft::Vec3<double>{0, 1, 0}));
}

TEST(FastTransform, ConstantSignalMatchesNaive) {
    const DQSignal<double> f(std::vector<DualQuaterniond>(
        4, DualQuaterniond(Quaterniond(1, 2, 3, 4), Quaterniond(-1, 0.5, 0, 2))));
    for (Side side : {Side::Left, Side::Right}) {
        const auto fast = dqft::dqft_fast(f, {}, side);
        const auto naive = dqft::dqft(f, side);
        EXPECT_EQ(fast.side(), side);
        // A few ulps of the largest coefficient (8): the frame change rounds.
        EXPECT_LE(oracle::max_abs_diff(fast.coefficients(), naive.coefficients()),
                  4 * std::numeric_limits<double>::epsilon() * 8);
        // Along a basis axis the frame is exact and so is the whole computation.
        for (const auto& mu : {Quaterniond::i(), Quaterniond::j(), Quaterniond::k()}) {
            const TransformAxis<double> axis(mu);
            EXPECT_EQ(dqft::dqft_fast(f, axis, side).coefficients(), dqft::dqft(f, side, axis).coefficients());
        }
    }
}

TEST(FastTransform, MatchesNaiveOnRandomSignals) {
    oracle::Random rng(61);
    for (std::size_t m : {8u, 64u, 256u})
        for (int n = 0; n < 100; ++n) {
            const DQSignal<double> f(rng.signal(m));
            const auto axis = rng.axis();
            for (Side side : {Side::Left, Side::Right}) {
                const auto fast = dqft::dqft_fast(f, axis, side);
                EXPECT_LE(oracle::max_abs_diff(fast.coefficients(), dqft::dqft(f, side, axis).coefficients()),
                          1e-9);
                EXPECT_LE(oracle::max_abs_diff(dqft::idqft_fast(fast).samples(), f.samples()), 1e-10);
            }
        }
}

TEST(FastTransform, MatchesBruteForceOnOddSizes) {
    oracle::Random rng(62);
    for (std::size_t m : {1u, 2u, 3u, 257u}) {
        const auto s = rng.signal(m);
        const auto axis = rng.axis();
        const std::array<long double, 3> mu{axis.mu().x(), axis.mu().y(), axis.mu().z()};
        const DQSignal<double> f(s);
        EXPECT_LE(oracle::max_abs_diff(oracle::brute_force(s, mu, true, -1),
                                       dqft::dqft_fast(f, axis, Side::Right).coefficients()), 1e-9);
        EXPECT_LE(oracle::max_abs_diff(oracle::brute_force(s, mu, false, -1),
                                       dqft::dqft_fast(f, axis, Side::Left).coefficients()), 1e-9);
    }
}

TEST(FastTransform, FasterThanNaiveAtLargeSize) {
    oracle::Random rng(63);
    const DQSignal<double> f(rng.signal(4096));
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto naive = dqft::dqft_right(f);
    const auto t1 = clock::now();
    const auto fast = dqft::dqft_fast(f, {}, Side::Right);
    const auto t2 = clock::now();
    EXPECT_LT(t2 - t1, t1 - t0);
    EXPECT_LE(oracle::max_abs_diff(fast.coefficients(), naive.coefficients()), 1e-9);
}
