// Smooth a synthetic joint motion: a slow screw motion with a fast wobble on
// top, low-passed in the dual-quaternion frequency domain.
//
//   smooth_motion [frames] [cutoff]

#include <cstdlib>
#include <iostream>

#include "dqft/dqft.hpp"

using dqft::operator-;

int main(int argc, char** argv) {
    const std::size_t frames = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 128;
    const std::size_t cutoff = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 3;
    if (frames < 16) {
        std::cerr << "need at least 16 frames\n";
        return 2;
    }

    const dqft::SyntheticComponent slow{1, 0.9, 2.0, {0, 0, 1}};
    const dqft::SyntheticComponent wobble{frames / 4, 0.05, 0.1, {1, 1, 0}};
    const auto track = dqft::generate_synthetic(frames, {slow, wobble}, 120.0);

    // Rigid encoding, so filtered poses need renormalizing to stay rigid.
    const auto signal = dqft::track_to_signal(track, dqft::Encoding::Rigid, true);
    dqft::FilterOptions opts;
    opts.renormalize = true;
    opts.fast = true;
    const auto mask = dqft::make_low_pass(frames, cutoff);
    const auto result = dqft::filter_signal(signal, mask, dqft::Side::Right, {}, opts);

    std::cout << "frames=" << frames << " kept_bins=" << result.report.kept_bins
              << " attenuated_energy_fraction=" << result.report.attenuated_energy_fraction << '\n';

    // Compare against the slow component alone.
    const auto reference = dqft::track_to_signal(dqft::generate_synthetic(frames, {slow}, 120.0),
                                                 dqft::Encoding::Rigid, true);
    double worst = 0;
    for (std::size_t n = 0; n < frames; ++n) {
        const auto a = dqft::to_rotation_translation(result.signal[n]);
        const auto b = dqft::to_rotation_translation(reference[n]);
        worst = std::max(worst, dqft::norm(a.translation - b.translation));
    }
    std::cout << "max translation deviation from the slow motion: " << worst << '\n';

    const auto screw = dqft::screw_from_dual_quaternion(result.signal[frames / 4]);
    std::cout << "pose " << frames / 4 << ": theta=" << screw.theta << " d=" << screw.d << " axis=("
              << screw.l[0] << ", " << screw.l[1] << ", " << screw.l[2] << ")\n";
    return 0;
}
