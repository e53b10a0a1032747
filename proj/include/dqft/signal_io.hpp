#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqft/detail/text.hpp"
#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/quaternion.hpp"
#include "dqft/spectral.hpp"

namespace dqft {

enum class Format { Csv, Json };

// ".json" (any case) selects JSON; everything else is CSV.
inline Format format_from_path(std::string_view path) {
    if (path.size() >= 5) {
        std::string ext(path.substr(path.size() - 5));
        for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (ext == ".json") return Format::Json;
    }
    return Format::Csv;
}

struct MotionSample {
    double t = 0;
    Quaterniond rotation = Quaterniond::identity();
    Vec3<double> translation{0, 0, 0};
};

// Euler-angle displacements (radians) of one joint.
struct EulerSample {
    double t = 0;
    Vec3<double> angles{0, 0, 0};
};

enum class TrackKind { Rigid, Euler };

inline constexpr double kRotationIngestTolerance = 1e-6;
inline constexpr double kTimingTolerance = 1e-6;

struct TrackOptions {
    // Rescale rotations off the unit sphere instead of rejecting them.
    bool renormalize_rotations = false;
    // Used only for single-sample tracks, where no spacing can be measured.
    double fallback_sample_rate = 1.0;
};

/// Uniformly sampled track of rigid poses or Euler-angle rows.
class MotionTrack {
public:
    using Samples = std::variant<std::vector<MotionSample>, std::vector<EulerSample>>;

    explicit MotionTrack(std::vector<MotionSample> samples, const TrackOptions& opts = {})
        : samples_(std::move(samples)) {
        auto& rows = std::get<0>(samples_);
        for (std::size_t n = 0; n < rows.size(); ++n) {
            const double len = norm(rows[n].rotation);
            if (std::abs(len - 1.0) > kRotationIngestTolerance) {
                if (!opts.renormalize_rotations || !(len > 0))
                    throw invariant_violation(n, "rotation norm " + detail::format_double(len) +
                                                     " is not unit");
                rows[n].rotation = rows[n].rotation / len;
            }
            for (double c : rows[n].translation)
                if (!std::isfinite(c)) throw invariant_violation(n, "non-finite translation");
        }
        validate_timing(opts);
    }

    explicit MotionTrack(std::vector<EulerSample> samples, const TrackOptions& opts = {})
        : samples_(std::move(samples)) {
        for (std::size_t n = 0; n < euler().size(); ++n)
            for (double a : euler()[n].angles)
                if (!std::isfinite(a)) throw invariant_violation(n, "non-finite angle");
        validate_timing(opts);
    }

    TrackKind kind() const noexcept { return samples_.index() == 0 ? TrackKind::Rigid : TrackKind::Euler; }
    std::size_t size() const noexcept {
        return std::visit([](const auto& v) { return v.size(); }, samples_);
    }
    double sample_rate() const noexcept { return sample_rate_; }

    const std::vector<MotionSample>& rigid() const { return std::get<0>(samples_); }
    const std::vector<EulerSample>& euler() const { return std::get<1>(samples_); }

    std::vector<double> timestamps() const {
        return std::visit(
            [](const auto& v) {
                std::vector<double> ts;
                ts.reserve(v.size());
                for (const auto& s : v) ts.push_back(s.t);
                return ts;
            },
            samples_);
    }

private:
    void validate_timing(const TrackOptions& opts) {
        const std::vector<double> ts = timestamps();
        if (ts.empty()) throw invalid_argument("track must hold at least one sample");
        for (std::size_t n = 0; n < ts.size(); ++n)
            if (!std::isfinite(ts[n])) throw invariant_violation(n, "non-finite timestamp");
        if (ts.size() == 1) {
            if (!(opts.fallback_sample_rate > 0))
                throw invalid_argument("fallback sample rate must be positive");
            sample_rate_ = opts.fallback_sample_rate;
            return;
        }
        const double mean_dt = (ts.back() - ts.front()) / double(ts.size() - 1);
        for (std::size_t n = 1; n < ts.size(); ++n) {
            const double dt = ts[n] - ts[n - 1];
            if (!(dt > 0)) throw invariant_violation(n, "timestamps must be strictly increasing");
            if (std::abs(dt - mean_dt) > kTimingTolerance * mean_dt)
                throw invariant_violation(n, "non-uniform sample spacing");
        }
        sample_rate_ = 1.0 / mean_dt;
    }

    Samples samples_;
    double sample_rate_ = 1.0;
};

// ---------------------------------------------------------------------------
// CSV / JSON

inline const std::vector<std::string>& rigid_columns() {
    static const std::vector<std::string> cols{"t", "qw", "qx", "qy", "qz", "tx", "ty", "tz"};
    return cols;
}

inline const std::vector<std::string>& euler_columns() {
    static const std::vector<std::string> cols{"t", "ax", "ay", "az"};
    return cols;
}

namespace detail {

inline MotionTrack track_from_rows(TrackKind kind, const std::vector<CsvRow>& rows,
                                   const TrackOptions& opts) {
    if (rows.empty()) throw parse_error(0, "track has no samples");
    if (kind == TrackKind::Rigid) {
        std::vector<MotionSample> samples;
        samples.reserve(rows.size());
        for (std::size_t n = 0; n < rows.size(); ++n) {
            const auto& v = rows[n].values;
            MotionSample s;
            s.t = v[0];
            s.rotation = Quaterniond(v[1], v[2], v[3], v[4]);
            s.translation = {v[5], v[6], v[7]};
            samples.push_back(s);
        }
        try {
            return MotionTrack(std::move(samples), opts);
        } catch (const invariant_violation& e) {
            // Re-tag with the source line so diagnostics point at the file.
            throw invariant_violation(e.index(), std::string(e.what()) + " (line " +
                                                     std::to_string(rows[e.index()].line) + ")");
        }
    }
    std::vector<EulerSample> samples;
    samples.reserve(rows.size());
    for (const auto& r : rows) samples.push_back({r.values[0], {r.values[1], r.values[2], r.values[3]}});
    try {
        return MotionTrack(std::move(samples), opts);
    } catch (const invariant_violation& e) {
        throw invariant_violation(e.index(), std::string(e.what()) + " (line " +
                                                 std::to_string(rows[e.index()].line) + ")");
    }
}

inline TrackKind kind_from_header(const std::vector<std::string>& header, std::size_t line) {
    if (header == rigid_columns()) return TrackKind::Rigid;
    if (header == euler_columns()) return TrackKind::Euler;
    throw parse_error(line, "unrecognized header '" + join_header(header) + "'; expected '" +
                                join_header(rigid_columns()) + "' or '" +
                                join_header(euler_columns()) + "'");
}

inline std::vector<std::vector<double>> track_rows(const MotionTrack& track) {
    std::vector<std::vector<double>> rows;
    rows.reserve(track.size());
    if (track.kind() == TrackKind::Rigid) {
        for (const auto& s : track.rigid())
            rows.push_back({s.t, s.rotation.w(), s.rotation.x(), s.rotation.y(), s.rotation.z(),
                            s.translation[0], s.translation[1], s.translation[2]});
    } else {
        for (const auto& s : track.euler())
            rows.push_back({s.t, s.angles[0], s.angles[1], s.angles[2]});
    }
    return rows;
}

}  // namespace detail

/// Parses and validates a track. The CSV header selects the row kind; JSON is an
/// array of records carrying the same field names.
inline MotionTrack load_track(std::istream& in, Format format, const TrackOptions& opts = {}) {
    if (format == Format::Csv) {
        detail::CsvTable table = detail::read_csv(in);
        const TrackKind kind = detail::kind_from_header(table.header, 1);
        return detail::track_from_rows(kind, table.rows, opts);
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty() || !doc.front().is_object())
        throw parse_error(0, "track JSON must be a non-empty array of records");
    const TrackKind kind = doc.front().contains("qw") ? TrackKind::Rigid : TrackKind::Euler;
    const auto& cols = kind == TrackKind::Rigid ? rigid_columns() : euler_columns();
    std::vector<detail::CsvRow> rows;
    rows.reserve(doc.size());
    for (std::size_t n = 0; n < doc.size(); ++n) {
        const auto& rec = doc[n];
        detail::CsvRow row{n + 1, {}};
        for (const auto& c : cols) {
            if (!rec.is_object() || !rec.contains(c) || !rec[c].is_number())
                throw parse_error(0, "record " + std::to_string(n) + ": missing numeric field '" + c + "'");
            const double v = rec[c].get<double>();
            if (!std::isfinite(v))
                throw parse_error(0, "record " + std::to_string(n) + ": non-finite '" + c + "'");
            row.values.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return detail::track_from_rows(kind, rows, opts);
}

inline MotionTrack load_track(const std::string& path, const TrackOptions& opts = {}) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");
    return load_track(in, format_from_path(path), opts);
}

inline void save_track(std::ostream& out, const MotionTrack& track, Format format) {
    const auto& cols = track.kind() == TrackKind::Rigid ? rigid_columns() : euler_columns();
    const auto rows = detail::track_rows(track);
    if (format == Format::Csv) {
        out << detail::join_header(cols) << '\n';
        for (const auto& r : rows) {
            for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << detail::format_double(r[c]);
            out << '\n';
        }
    } else {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json rec;
            for (std::size_t c = 0; c < r.size(); ++c) rec[cols[c]] = r[c];
            doc.push_back(std::move(rec));
        }
        out << doc.dump(2) << '\n';
    }
    if (!out) throw io_error("write failure");
}

// ---------------------------------------------------------------------------
// Encodings

/// Rigid: unit dual-quaternion r + eps (1/2) t r.
/// Pure:  (0, a) + eps (0, t), where a is the Euler row or the rotation
///        vector 2 log(r) of a rigid row.
enum class Encoding { Rigid, Pure };

inline const char* to_string(Encoding e) noexcept { return e == Encoding::Rigid ? "rigid" : "pure"; }

inline DQSignal<double> track_to_signal(const MotionTrack& track, Encoding encoding = Encoding::Rigid,
                                        bool hemisphere_align = false) {
    std::vector<DualQuaterniond> samples;
    samples.reserve(track.size());
    if (track.kind() == TrackKind::Euler) {
        if (encoding != Encoding::Pure)
            throw invalid_argument("Euler tracks support only the pure encoding");
        for (const auto& s : track.euler()) samples.emplace_back(Quaterniond::pure(s.angles));
        return DQSignal<double>(std::move(samples), track.sample_rate());
    }
    Quaterniond prev = Quaterniond::identity();
    for (std::size_t n = 0; n < track.size(); ++n) {
        const MotionSample& s = track.rigid()[n];
        // Ingestion accepts rotations within 1e-6 of unit; tighten before encoding.
        Quaterniond r = normalized(s.rotation);
        if (hemisphere_align && n > 0 && dot(r, prev) < 0) r = -r;
        prev = r;
        if (encoding == Encoding::Rigid) {
            samples.push_back(from_rotation_translation(r, s.translation));
        } else {
            samples.emplace_back(2.0 * log(r), Quaterniond::pure(s.translation));
        }
    }
    return DQSignal<double>(std::move(samples), track.sample_rate());
}

struct DecodeOptions {
    TrackKind kind = TrackKind::Rigid;  // Euler output requires the pure encoding
    bool renormalize = false;           // rigid decoding: project samples onto unit first
    // Explicit timestamps; empty means n / sample_rate.
    std::vector<double> timestamps{};
};

inline MotionTrack signal_to_track(const DQSignal<double>& f, Encoding encoding,
                                   const DecodeOptions& opts = {}) {
    const std::size_t m = f.size();
    if (!opts.timestamps.empty() && opts.timestamps.size() != m)
        throw invalid_argument("timestamp count does not match signal length");
    auto time_of = [&](std::size_t n) {
        return opts.timestamps.empty() ? double(n) / f.sample_rate() : opts.timestamps[n];
    };
    TrackOptions topts;
    topts.fallback_sample_rate = f.sample_rate();

    if (opts.kind == TrackKind::Euler) {
        if (encoding != Encoding::Pure)
            throw invalid_argument("Euler tracks support only the pure encoding");
        std::vector<EulerSample> rows;
        rows.reserve(m);
        for (std::size_t n = 0; n < m; ++n) rows.push_back({time_of(n), f[n].real().vec()});
        return MotionTrack(std::move(rows), topts);
    }

    std::vector<MotionSample> rows;
    rows.reserve(m);
    for (std::size_t n = 0; n < m; ++n) {
        DualQuaterniond s = f[n];
        if (encoding == Encoding::Rigid) {
            if (opts.renormalize) {
                try {
                    s = normalize(s);
                } catch (const degenerate_input&) {
                    throw degenerate_sample(n, "real part vanishes, cannot renormalize");
                }
            } else if (!is_unit(s)) {
                throw invariant_violation(n, "sample is not a unit dual-quaternion");
            }
            const RigidTransform<double> rt = to_rotation_translation(s);
            rows.push_back({time_of(n), rt.rotation, rt.translation});
        } else {
            const Quaterniond rot = exp(Quaterniond::pure(0.5 * s.real().vec()));
            rows.push_back({time_of(n), rot, s.dual().vec()});
        }
    }
    return MotionTrack(std::move(rows), topts);
}

// ---------------------------------------------------------------------------
// Synthetic motion

struct SyntheticComponent {
    std::size_t bin = 0;             // wrap-around bin distance, <= M/2
    double rotation_amplitude = 0;   // radians
    double translation_amplitude = 0;
    Vec3<double> axis{1, 0, 0};
};

/// Frame x carries rotation exp(w(x)/2), w(x) = sum_c A_rot sin(2 pi b x / M) axis_c,
/// and translation sum_c A_trans sin(2 pi b x / M) axis_c.
inline MotionTrack generate_synthetic(std::size_t m, const std::vector<SyntheticComponent>& components,
                                      double sample_rate = 1.0) {
    if (m == 0) throw invalid_argument("synthetic track length must be positive");
    if (!(sample_rate > 0) || !std::isfinite(sample_rate))
        throw invalid_argument("sample rate must be positive and finite");
    std::vector<Vec3<double>> axes;
    for (const auto& c : components) {
        if (c.bin > m / 2)
            throw invalid_argument("component bin " + std::to_string(c.bin) + " exceeds M/2 = " +
                                   std::to_string(m / 2));
        if (!std::isfinite(c.rotation_amplitude) || !std::isfinite(c.translation_amplitude))
            throw invalid_argument("component amplitudes must be finite");
        const double n = norm(c.axis);
        const bool silent = c.rotation_amplitude == 0 && c.translation_amplitude == 0;
        if (!silent && !(n > 0 && std::isfinite(n)))
            throw invalid_argument("component axis must be finite and nonzero");
        axes.push_back(silent ? Vec3<double>{0, 0, 0} : (1.0 / n) * c.axis);
    }
    std::vector<MotionSample> rows;
    rows.reserve(m);
    for (std::size_t x = 0; x < m; ++x) {
        Vec3<double> w{0, 0, 0}, t{0, 0, 0};
        for (std::size_t i = 0; i < components.size(); ++i) {
            const double s = root_of_unity<double>(components[i].bin * x, m).second;
            w = w + (components[i].rotation_amplitude * s) * axes[i];
            t = t + (components[i].translation_amplitude * s) * axes[i];
        }
        rows.push_back({double(x) / sample_rate, exp(Quaterniond::pure(0.5 * w)), t});
    }
    TrackOptions opts;
    opts.fallback_sample_rate = sample_rate;
    return MotionTrack(std::move(rows), opts);
}

}  // namespace dqft
