#pragma once

// Batch command-line pipelines. Commands write their result into memory and
// only touch the output path once everything succeeded, so a nonzero exit
// never leaves a partial file behind.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dqft/detail/text.hpp"
#include "dqft/errors.hpp"
#include "dqft/fast_transform.hpp"
#include "dqft/filters.hpp"
#include "dqft/signal_io.hpp"
#include "dqft/spectral.hpp"
#include "dqft/spectrum_io.hpp"

namespace dqft::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid_input = 2;
inline constexpr int io_failure = 3;
inline constexpr int degenerate = 4;
inline constexpr int roundtrip_exceeded = 5;
}  // namespace exit_code

inline constexpr double kRoundtripBound = 1e-9;

enum class Command { Spectrum, Filter, Roundtrip, Synth, Convert };

struct CliConfig {
    Command command = Command::Spectrum;
    std::string input;   // "-" or empty reads stdin
    std::string output;  // empty writes to the output stream
    std::optional<Format> input_format;
    std::optional<Format> format;  // output format; defaults from the output extension
    Side side = Side::Right;
    Vec3<double> axis{1, 1, 1};
    Encoding encoding = Encoding::Rigid;
    bool hemisphere_align = false;
    bool renormalize = false;
    bool renormalize_input = false;
    bool fast = false;
    unsigned threads = 1;
    // filter: exactly one of these
    std::optional<std::string> low_pass;
    std::optional<std::string> high_pass;
    std::optional<std::string> band;  // "lo:hi"
    // synth
    std::string components;
    std::size_t length = 0;
    double rate = 1.0;
    // convert
    std::optional<Encoding> to;
};

namespace detail {

struct CommandError {
    int code;
    std::string message;
};

inline std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Bare integers are bins; a "hz" suffix converts via round(hz * M / sample_rate).
inline std::size_t parse_cutoff(const std::string& text, std::size_t m, double sample_rate) {
    const std::string s = lower(std::string(dqft::detail::trim(text)));
    if (s.size() > 2 && s.ends_with("hz")) {
        const double hz = dqft::detail::parse_double(s.substr(0, s.size() - 2), 0);
        if (hz < 0) throw invalid_argument("cutoff must be non-negative: '" + text + "'");
        return static_cast<std::size_t>(std::llround(hz * double(m) / sample_rate));
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw invalid_argument("cutoff must be a non-negative bin count or '<value>hz': '" + text + "'");
    return static_cast<std::size_t>(std::stoull(s));
}

inline Vec3<double> parse_vec3(const std::string& text) {
    const auto parts = dqft::detail::split_commas(text);
    if (parts.size() != 3) throw invalid_argument("expected three comma-separated values: '" + text + "'");
    return {dqft::detail::parse_double(parts[0], 0), dqft::detail::parse_double(parts[1], 0),
            dqft::detail::parse_double(parts[2], 0)};
}

/// "b:rotAmp:transAmp:ax,ay,az;..." (empty string = no components).
inline std::vector<SyntheticComponent> parse_components(const std::string& text) {
    std::vector<SyntheticComponent> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (dqft::detail::trim(item).empty()) continue;
        std::vector<std::string> fields;
        std::stringstream is(item);
        std::string f;
        while (std::getline(is, f, ':')) fields.push_back(f);
        if (fields.size() != 4)
            throw invalid_argument("component '" + item + "' must be b:rotAmp:transAmp:ax,ay,az");
        SyntheticComponent c;
        const std::string b(dqft::detail::trim(fields[0]));
        if (b.empty() || !std::all_of(b.begin(), b.end(), [](unsigned char ch) { return std::isdigit(ch); }))
            throw invalid_argument("component bin must be a non-negative integer: '" + fields[0] + "'");
        c.bin = static_cast<std::size_t>(std::stoull(b));
        c.rotation_amplitude = dqft::detail::parse_double(dqft::detail::trim(fields[1]), 0);
        c.translation_amplitude = dqft::detail::parse_double(dqft::detail::trim(fields[2]), 0);
        c.axis = parse_vec3(fields[3]);
        out.push_back(c);
    }
    return out;
}

inline MotionTrack read_input(const CliConfig& cfg, std::istream& in) {
    TrackOptions opts;
    opts.renormalize_rotations = cfg.renormalize_input;
    if (cfg.input.empty() || cfg.input == "-")
        return load_track(in, cfg.input_format.value_or(Format::Csv), opts);
    std::ifstream file(cfg.input);
    if (!file) throw io_error("cannot open input '" + cfg.input + "'");
    return load_track(file, cfg.input_format.value_or(format_from_path(cfg.input)), opts);
}

inline Format output_format(const CliConfig& cfg) {
    if (cfg.format) return *cfg.format;
    return cfg.output.empty() ? Format::Csv : format_from_path(cfg.output);
}

inline void write_output(const CliConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << content;
        return;
    }
    {
        std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
        if (file && file.write(content.data(), std::streamsize(content.size())) && file.flush()) return;
    }
    std::remove(cfg.output.c_str());
    throw io_error("cannot write output '" + cfg.output + "'");
}

// Stream for human-readable report lines: stdout unless it carries the data.
inline std::ostream& report_stream(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return cfg.output.empty() || cfg.output == "-" ? err : out;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const CommandError& e) {
        err << "error: " << e.message << '\n';
        return e.code;
    } catch (const io_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io_failure;
    } catch (const degenerate_input& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::degenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }
}

inline DQSpectrum<double> forward(const CliConfig& cfg, const DQSignal<double>& f,
                                  const TransformAxis<double>& axis) {
    if (cfg.fast) return dqft_fast(f, axis, cfg.side);
    return dqft(f, cfg.side, axis, TransformOptions{cfg.threads});
}

inline DQSignal<double> inverse(const CliConfig& cfg, const DQSpectrum<double>& spectrum) {
    if (cfg.fast) return idqft_fast(spectrum);
    return idqft(spectrum, TransformOptions{cfg.threads});
}

}  // namespace detail

/// Track -> encoded signal -> spectrum file.
inline int cmd_spectrum(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const MotionTrack track = detail::read_input(cfg, in);
        const auto axis = TransformAxis<double>::from_direction(cfg.axis);
        const DQSignal<double> f = track_to_signal(track, cfg.encoding, cfg.hemisphere_align);
        std::ostringstream buf;
        export_spectrum(buf, detail::forward(cfg, f, axis), detail::output_format(cfg));
        detail::write_output(cfg, buf.str(), out);
        return exit_code::ok;
    });
}

/// Track -> transform -> mask -> inverse -> track of the same row kind.
inline int cmd_filter(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const int selected = int(cfg.low_pass.has_value()) + int(cfg.high_pass.has_value()) +
                             int(cfg.band.has_value());
        if (selected != 1)
            throw detail::CommandError{exit_code::invalid_input,
                                       "exactly one of --low-pass, --high-pass, --band is required"};
        const MotionTrack track = detail::read_input(cfg, in);
        const auto axis = TransformAxis<double>::from_direction(cfg.axis);
        const DQSignal<double> f = track_to_signal(track, cfg.encoding, cfg.hemisphere_align);
        const std::size_t m = f.size();
        const double sr = track.sample_rate();

        std::optional<FrequencyMask<double>> mask;
        if (cfg.low_pass) mask = make_low_pass(m, detail::parse_cutoff(*cfg.low_pass, m, sr));
        if (cfg.high_pass) mask = make_high_pass(m, detail::parse_cutoff(*cfg.high_pass, m, sr));
        if (cfg.band) {
            const auto colon = cfg.band->find(':');
            if (colon == std::string::npos)
                throw invalid_argument("--band expects lo:hi, got '" + *cfg.band + "'");
            mask = make_band_pass(m, detail::parse_cutoff(cfg.band->substr(0, colon), m, sr),
                                  detail::parse_cutoff(cfg.band->substr(colon + 1), m, sr));
        }

        FilterOptions fopts;
        fopts.renormalize = cfg.renormalize;
        fopts.fast = cfg.fast;
        fopts.transform.workers = cfg.threads;
        const FilterResult<double> result = filter_signal(f, *mask, cfg.side, axis, fopts);

        DecodeOptions dopts;
        dopts.kind = track.kind();
        dopts.renormalize = cfg.renormalize;
        dopts.timestamps = track.timestamps();
        MotionTrack filtered = [&] {
            try {
                return signal_to_track(result.signal, cfg.encoding, dopts);
            } catch (const invariant_violation& e) {
                throw detail::CommandError{
                    exit_code::invalid_input,
                    std::string("filtered motion left the unit manifold (") + e.what() +
                        "); pass --renormalize or use --encoding pure"};
            }
        }();

        std::ostringstream buf;
        save_track(buf, filtered, detail::output_format(cfg));
        detail::write_output(cfg, buf.str(), out);
        detail::report_stream(cfg, out, err)
            << "kept_bins=" << result.report.kept_bins << " attenuated_energy_fraction="
            << dqft::detail::format_double(result.report.attenuated_energy_fraction)
            << " renormalized=" << (result.report.renormalized ? 1 : 0) << '\n';
        return exit_code::ok;
    });
}

/// Transform and invert; exit 0 iff the max per-component error is within 1e-9.
inline int cmd_roundtrip(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        const MotionTrack track = detail::read_input(cfg, in);
        const auto axis = TransformAxis<double>::from_direction(cfg.axis);
        const DQSignal<double> f = track_to_signal(track, cfg.encoding, cfg.hemisphere_align);
        const DQSignal<double> back = detail::inverse(cfg, detail::forward(cfg, f, axis));
        double max_err = 0;
        for (std::size_t n = 0; n < f.size(); ++n) {
            const auto a = f[n].coeffs();
            const auto b = back[n].coeffs();
            for (int c = 0; c < 8; ++c) max_err = std::max(max_err, std::abs(a[c] - b[c]));
        }
        out << "max_error=" << dqft::detail::format_double(max_err) << '\n';
        if (max_err > kRoundtripBound) {
            err << "error: reconstruction error exceeds " << kRoundtripBound << '\n';
            return exit_code::roundtrip_exceeded;
        }
        return exit_code::ok;
    });
}

inline int cmd_synth(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        std::vector<SyntheticComponent> comps;
        try {
            comps = detail::parse_components(cfg.components);
        } catch (const std::exception& e) {
            throw detail::CommandError{exit_code::invalid_input, e.what()};
        }
        if (cfg.length == 0) throw invalid_argument("--length must be positive");
        std::ostringstream buf;
        save_track(buf, generate_synthetic(cfg.length, comps, cfg.rate), detail::output_format(cfg));
        detail::write_output(cfg, buf.str(), out);
        return exit_code::ok;
    });
}

/// Re-serializes a track (csv <-> json). With --to, also moves between rigid
/// rows and pure rows (t,ax,ay,az holding the rotation vector).
inline int cmd_convert(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    return detail::guarded(err, [&] {
        MotionTrack track = detail::read_input(cfg, in);
        if (cfg.to == Encoding::Pure && track.kind() == TrackKind::Rigid) {
            for (std::size_t n = 0; n < track.size(); ++n)
                if (track.rigid()[n].translation != Vec3<double>{0, 0, 0})
                    throw invariant_violation(n, "translation cannot be represented in pure rows");
            DecodeOptions d;
            d.kind = TrackKind::Euler;
            d.timestamps = track.timestamps();
            track = signal_to_track(track_to_signal(track, Encoding::Pure, cfg.hemisphere_align),
                                    Encoding::Pure, d);
        } else if (cfg.to == Encoding::Rigid && track.kind() == TrackKind::Euler) {
            DecodeOptions d;
            d.kind = TrackKind::Rigid;
            d.timestamps = track.timestamps();
            track = signal_to_track(track_to_signal(track, Encoding::Pure), Encoding::Pure, d);
        }
        std::ostringstream buf;
        save_track(buf, track, detail::output_format(cfg));
        detail::write_output(cfg, buf.str(), out);
        return exit_code::ok;
    });
}

inline int dispatch(const CliConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
    switch (cfg.command) {
        case Command::Spectrum: return cmd_spectrum(cfg, in, out, err);
        case Command::Filter: return cmd_filter(cfg, in, out, err);
        case Command::Roundtrip: return cmd_roundtrip(cfg, in, out, err);
        case Command::Synth: return cmd_synth(cfg, out, err);
        case Command::Convert: return cmd_convert(cfg, in, out, err);
    }
    return exit_code::invalid_input;
}

namespace detail {

// Keys outside any [section] belong to the selected subcommand, so a config
// file can use the bare flag names.
class CommandConfig : public CLI::ConfigINI {
public:
    explicit CommandConfig(const CLI::App& app) : app_(app) {}

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::vector<CLI::ConfigItem> items = CLI::ConfigINI::from_config(input);
        const auto subs = app_.get_subcommands();
        if (subs.empty()) return items;
        for (auto& item : items)
            if (item.parents.empty()) item.parents = {subs.front()->get_name()};
        return items;
    }

private:
    const CLI::App& app_;
};

}  // namespace detail

/// Parses argv into a CliConfig and runs the selected command.
inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Dual-quaternion Fourier analysis and filtering of rigid-motion tracks", "dqft"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a TOML/INI file (same keys as the flags)");
    app.config_formatter(std::make_shared<detail::CommandConfig>(app));
    // Lets --config follow the subcommand name.
    app.fallthrough();

    std::string axis_text = "1,1,1";
    std::string side_text = "right";
    std::string encoding_text = "rigid";
    std::string format_text, input_format_text, to_text;

    const std::map<std::string, Format> formats{{"csv", Format::Csv}, {"json", Format::Json}};

    auto add_io = [&](CLI::App* sub, bool with_input) {
        if (with_input) {
            sub->add_option("-i,--input", cfg.input, "Input track (csv or json; '-' for stdin)");
            sub->add_option("--input-format", input_format_text, "Override input format")
                ->check(CLI::IsMember({"csv", "json"}));
        }
        sub->add_option("-o,--output", cfg.output, "Output path (stdout if omitted)");
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_transform = [&](CLI::App* sub) {
        sub->add_option("--side", side_text, "Kernel side")->check(CLI::IsMember({"left", "right"}));
        sub->add_option("--axis", axis_text, "Transform axis ax,ay,az (normalized)");
        sub->add_option("--encoding", encoding_text, "Signal encoding")
            ->check(CLI::IsMember({"rigid", "pure"}));
        sub->add_flag("--hemisphere-align", cfg.hemisphere_align,
                      "Flip rotation signs so consecutive samples share a hemisphere");
        sub->add_flag("--renormalize-input", cfg.renormalize_input,
                      "Rescale non-unit input rotations instead of rejecting them");
        sub->add_flag("--fast", cfg.fast, "Use the FFT path");
        sub->add_option("--threads", cfg.threads, "Worker threads for the direct transform")
            ->check(CLI::Range(1u, 1024u));
    };

    auto* spectrum = app.add_subcommand("spectrum", "Export the spectrum of a track");
    add_io(spectrum, true);
    add_transform(spectrum);

    auto* filter = app.add_subcommand("filter", "Frequency-domain filtering of a track");
    add_io(filter, true);
    add_transform(filter);
    filter->add_option("--low-pass", cfg.low_pass, "Keep bins with d(k) <= cutoff (bins or <x>hz)");
    filter->add_option("--high-pass", cfg.high_pass, "Keep bins with d(k) > cutoff");
    filter->add_option("--band", cfg.band, "Keep bins with lo <= d(k) <= hi, as lo:hi");
    filter->add_flag("--renormalize", cfg.renormalize, "Project outputs back onto rigid motions");

    auto* roundtrip = app.add_subcommand("roundtrip", "Check transform inversion on a track");
    add_io(roundtrip, true);
    add_transform(roundtrip);

    auto* synth = app.add_subcommand("synth", "Generate a synthetic screw-motion track");
    add_io(synth, false);
    synth->add_option("--components", cfg.components, "b:rotAmp:transAmp:ax,ay,az;...");
    synth->add_option("--length", cfg.length, "Number of frames")->required();
    synth->add_option("--rate", cfg.rate, "Sample rate (frames per second)");

    auto* convert = app.add_subcommand("convert", "Transcode a track (csv/json, rigid/pure rows)");
    add_io(convert, true);
    convert->add_option("--to", to_text, "Target row encoding")->check(CLI::IsMember({"rigid", "pure"}));
    convert->add_flag("--hemisphere-align", cfg.hemisphere_align, "Align rotations before logging");
    convert->add_flag("--renormalize-input", cfg.renormalize_input, "Rescale non-unit input rotations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::invalid_input;
    }

    try {
        cfg.axis = detail::parse_vec3(axis_text);
    } catch (const std::exception& e) {
        err << "error: --axis: " << e.what() << '\n';
        return exit_code::invalid_input;
    }
    cfg.side = side_text == "left" ? Side::Left : Side::Right;
    cfg.encoding = encoding_text == "pure" ? Encoding::Pure : Encoding::Rigid;
    if (!format_text.empty()) cfg.format = formats.at(format_text);
    if (!input_format_text.empty()) cfg.input_format = formats.at(input_format_text);
    if (!to_text.empty()) cfg.to = to_text == "pure" ? Encoding::Pure : Encoding::Rigid;

    if (spectrum->parsed()) cfg.command = Command::Spectrum;
    if (filter->parsed()) cfg.command = Command::Filter;
    if (roundtrip->parsed()) cfg.command = Command::Roundtrip;
    if (synth->parsed()) cfg.command = Command::Synth;
    if (convert->parsed()) cfg.command = Command::Convert;
    return dispatch(cfg, in, out, err);
}

}  // namespace dqft::cli
