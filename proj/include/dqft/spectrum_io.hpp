#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqft/detail/text.hpp"
#include "dqft/dual_quaternion.hpp"
#include "dqft/errors.hpp"
#include "dqft/signal_io.hpp"
#include "dqft/spectral.hpp"

namespace dqft {

/// One exported bin.
struct SpectrumRow {
    std::size_t bin = 0;
    double freq_hz = 0;  // signed: bins above M/2 report negative frequencies
    double mag8 = 0;
    double mag_real = 0;
    double mag_dual = 0;
    std::array<double, 8> coeffs{};  // wr xr yr zr wd xd yd zd
};

inline const std::vector<std::string>& spectrum_columns() {
    static const std::vector<std::string> cols{"bin", "freq_hz", "mag8", "mag_real", "mag_dual",
                                               "wr",  "xr",      "yr",   "zr",       "wd",
                                               "xd",  "yd",      "zd"};
    return cols;
}

inline double bin_frequency(std::size_t k, std::size_t m, double sample_rate) noexcept {
    const double signed_bin = k <= m / 2 ? double(k) : double(k) - double(m);
    return signed_bin * sample_rate / double(m);
}

inline std::vector<SpectrumRow> spectrum_rows(const DQSpectrum<double>& spectrum) {
    std::vector<SpectrumRow> rows;
    rows.reserve(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const DualQuaterniond& c = spectrum[k];
        rows.push_back({k, bin_frequency(k, spectrum.size(), spectrum.sample_rate()),
                        std::sqrt(squared_norm8(c)), norm(c.real()), norm(c.dual()), c.coeffs()});
    }
    return rows;
}

namespace detail {

inline std::array<double, 13> flatten(const SpectrumRow& r) {
    std::array<double, 13> v{double(r.bin), r.freq_hz, r.mag8, r.mag_real, r.mag_dual};
    for (int i = 0; i < 8; ++i) v[5 + i] = r.coeffs[i];
    return v;
}

inline SpectrumRow unflatten(const std::vector<double>& v, std::size_t line) {
    if (v[0] < 0 || v[0] != std::floor(v[0])) throw parse_error(line, "bin must be a non-negative integer");
    SpectrumRow r;
    r.bin = static_cast<std::size_t>(v[0]);
    r.freq_hz = v[1];
    r.mag8 = v[2];
    r.mag_real = v[3];
    r.mag_dual = v[4];
    for (int i = 0; i < 8; ++i) r.coeffs[i] = v[5 + i];
    return r;
}

}  // namespace detail

/// One row per bin: index, signed frequency, magnitudes, raw coefficients.
inline void export_spectrum(std::ostream& out, const DQSpectrum<double>& spectrum, Format format) {
    const auto& cols = spectrum_columns();
    const auto rows = spectrum_rows(spectrum);
    if (format == Format::Csv) {
        out << detail::join_header(cols) << '\n';
        for (const auto& r : rows) {
            out << r.bin;
            const auto v = detail::flatten(r);
            for (std::size_t c = 1; c < v.size(); ++c) out << ',' << detail::format_double(v[c]);
            out << '\n';
        }
    } else {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json rec;
            rec["bin"] = r.bin;
            const auto v = detail::flatten(r);
            for (std::size_t c = 1; c < v.size(); ++c) rec[cols[c]] = v[c];
            doc.push_back(std::move(rec));
        }
        out << doc.dump(2) << '\n';
    }
    if (!out) throw io_error("write failure");
}

inline std::vector<SpectrumRow> read_spectrum(std::istream& in, Format format) {
    const auto& cols = spectrum_columns();
    std::vector<SpectrumRow> rows;
    if (format == Format::Csv) {
        const detail::CsvTable table = detail::read_csv(in);
        if (table.header != cols) throw parse_error(1, "unrecognized spectrum header");
        for (const auto& r : table.rows) rows.push_back(detail::unflatten(r.values, r.line));
        return rows;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(0, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw parse_error(0, "spectrum JSON must be an array of records");
    for (std::size_t n = 0; n < doc.size(); ++n) {
        std::vector<double> v;
        for (const auto& c : cols) {
            if (!doc[n].is_object() || !doc[n].contains(c) || !doc[n][c].is_number())
                throw parse_error(0, "record " + std::to_string(n) + ": missing numeric field '" + c + "'");
            v.push_back(doc[n][c].get<double>());
        }
        rows.push_back(detail::unflatten(v, 0));
    }
    return rows;
}

}  // namespace dqft
