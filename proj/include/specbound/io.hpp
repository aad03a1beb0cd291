#pragma once

// Matrix input (Matrix Market array/coordinate, plain CSV), matrix CSV
// output, and BoundsReport serialization (table, JSON, CSV).

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/matrix.hpp"

namespace specbound {

enum class MatrixFormat { MatrixMarketArray, MatrixMarketCoordinate, Csv };
enum class OutputFormat { Table, Json, Csv };

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline double read_real(std::string_view tok, std::size_t line) {
    // from_chars rejects a leading '+'; accept it for hand-written files.
    if (!tok.empty() && tok.front() == '+') {
        tok.remove_prefix(1);
    }
    double v = 0.0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (tok.empty() || ec == std::errc::invalid_argument || ptr != end) {
        throw ParseError(line, "invalid number '" + std::string(tok) + "'");
    }
    if (ec == std::errc::result_out_of_range) {
        throw ParseError(line, "number out of range '" + std::string(tok) + "'");
    }
    return v;
}

inline std::size_t read_index(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (tok.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(line, "invalid integer '" + std::string(tok) + "'");
    }
    return v;
}

inline NonnegMatrix parse_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        const auto t = trim(text);
        if (t.empty()) {
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        while (true) {
            const auto comma = t.find(',', pos);
            const auto field =
                trim(t.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                   : comma - pos));
            row.push_back(read_real(field, line));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(line, "expected " + std::to_string(rows.front().size()) +
                                       " values, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw EmptyMatrix();
    }
    if (rows.size() != rows.front().size()) {
        throw NotSquare(rows.size(), rows.front().size());
    }
    return make_matrix(rows);
}

struct MarketHeader {
    bool coordinate = false;
};

inline MarketHeader read_market_banner(std::string_view first, std::size_t line) {
    const auto tok = split_ws(first);
    if (tok.size() != 5 || tok[0] != "%%MatrixMarket") {
        throw ParseError(line, "missing %%MatrixMarket banner");
    }
    if (lower(tok[1]) != "matrix") {
        throw ParseError(line, "unsupported object '" + std::string(tok[1]) + "'");
    }
    const auto layout = lower(tok[2]);
    if (layout != "array" && layout != "coordinate") {
        throw ParseError(line, "unsupported format '" + std::string(tok[2]) + "'");
    }
    const auto field = lower(tok[3]);
    if (field != "real" && field != "integer") {
        throw ParseError(line, "unsupported field '" + std::string(tok[3]) + "'");
    }
    if (lower(tok[4]) != "general") {
        throw ParseError(line, "unsupported symmetry '" + std::string(tok[4]) + "'");
    }
    return {layout == "coordinate"};
}

inline NonnegMatrix parse_market(std::istream& in, MatrixFormat format) {
    std::string text;
    std::size_t line = 0;
    if (!std::getline(in, text)) {
        throw ParseError(1, "empty file");
    }
    ++line;
    const auto header = read_market_banner(text, line);
    const bool want_coordinate = format == MatrixFormat::MatrixMarketCoordinate;
    if (header.coordinate != want_coordinate) {
        throw ParseError(line, want_coordinate ? "expected coordinate format, found array"
                                               : "expected array format, found coordinate");
    }

    // Data lines, skipping comments and blank lines.
    auto next = [&](std::vector<std::string_view>& tok) {
        while (std::getline(in, text)) {
            ++line;
            const auto t = trim(text);
            if (t.empty() || t.front() == '%') {
                continue;
            }
            tok = split_ws(t);
            return true;
        }
        return false;
    };

    std::vector<std::string_view> tok;
    if (!next(tok)) {
        throw ParseError(line, "missing size line");
    }
    const std::size_t size_line = line;
    if (tok.size() != (header.coordinate ? 3u : 2u)) {
        throw ParseError(line, "malformed size line");
    }
    const std::size_t rows = read_index(tok[0], line);
    const std::size_t cols = read_index(tok[1], line);
    if (rows != cols) {
        throw NotSquare(rows, cols);
    }
    if (rows == 0) {
        throw EmptyMatrix();
    }
    const std::size_t n = rows;
    std::vector<double> entries(n * n, 0.0);

    if (!header.coordinate) {
        // Column-major, possibly several values per line.
        std::size_t filled = 0;
        while (filled < n * n && next(tok)) {
            for (auto v : tok) {
                if (filled == n * n) {
                    throw ParseError(line, "more than " + std::to_string(n * n) + " values");
                }
                const std::size_t col = filled / n;
                const std::size_t row = filled % n;
                entries[row * n + col] = read_real(v, line);
                ++filled;
            }
        }
        if (filled < n * n) {
            throw ParseError(line, "expected " + std::to_string(n * n) + " values, found " +
                                       std::to_string(filled));
        }
    } else {
        const std::size_t nnz = read_index(tok[2], size_line);
        std::vector<bool> seen(n * n, false);
        for (std::size_t k = 0; k < nnz; ++k) {
            if (!next(tok)) {
                throw ParseError(line, "expected " + std::to_string(nnz) + " entries, found " +
                                           std::to_string(k));
            }
            if (tok.size() != 3) {
                throw ParseError(line, "coordinate entry must be 'i j value'");
            }
            const std::size_t i = read_index(tok[0], line);
            const std::size_t j = read_index(tok[1], line);
            if (i < 1 || i > n || j < 1 || j > n) {
                throw ParseError(line, "index out of range");
            }
            const std::size_t at = (i - 1) * n + (j - 1);
            if (seen[at]) {
                throw ParseError(line, "duplicate entry");
            }
            seen[at] = true;
            entries[at] = read_real(tok[2], line);
        }
    }
    if (next(tok)) {
        throw ParseError(line, "unexpected trailing data");
    }
    return {n, std::move(entries)};
}

}  // namespace detail

inline NonnegMatrix parse_matrix(std::istream& in, MatrixFormat format) {
    if (format == MatrixFormat::Csv) {
        return detail::parse_csv(in);
    }
    return detail::parse_market(in, format);
}

inline NonnegMatrix parse_matrix_file(const std::filesystem::path& path, MatrixFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    return parse_matrix(in, format);
}

/// Reads the banner of a Matrix Market file to tell array from coordinate.
inline MatrixFormat detect_market_format(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    std::string first;
    std::getline(in, first);
    return detail::read_market_banner(first, 1).coordinate ? MatrixFormat::MatrixMarketCoordinate
                                                           : MatrixFormat::MatrixMarketArray;
}

/// %.17g: enough digits for an exact round trip of every double.
inline std::string format_real(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline void write_matrix_csv(std::ostream& out, const NonnegMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_real(a(i, j));
        }
        out << '\n';
    }
}

inline nlohmann::json report_to_json(const BoundsReport& r) {
    return {
        {"n", r.n},
        {"kMax", r.k_max},
        {"rho", r.rho},
        {"sigma", r.sigma},
        {"converged", r.converged},
        {"interval", {r.interval.first, r.interval.second}},
        {"logScales", r.log_scales},
    };
}

/// Inverse of report_to_json. Throws InputError on a missing or mistyped field.
inline BoundsReport report_from_json(const nlohmann::json& j) {
    try {
        BoundsReport r;
        r.n = j.at("n").get<std::size_t>();
        r.k_max = j.at("kMax").get<int>();
        r.rho = j.at("rho").get<std::vector<double>>();
        r.sigma = j.at("sigma").get<std::vector<double>>();
        r.converged = j.at("converged").get<bool>();
        const auto iv = j.at("interval").get<std::vector<double>>();
        if (iv.size() != 2) {
            throw InputError("report interval must have two entries");
        }
        r.interval = {iv[0], iv[1]};
        r.log_scales = j.at("logScales").get<std::vector<double>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

inline void write_report(std::ostream& out, const BoundsReport& r, OutputFormat format) {
    switch (format) {
    case OutputFormat::Json:
        out << report_to_json(r).dump() << '\n';
        return;
    case OutputFormat::Csv:
        out << "k,rho,sigma,gap,logScale\n";
        for (std::size_t k = 0; k < r.rho.size(); ++k) {
            out << k << ',' << format_real(r.rho[k]) << ',' << format_real(r.sigma[k]) << ','
                << format_real(r.sigma[k] - r.rho[k]) << ',' << format_real(r.log_scales[k])
                << '\n';
        }
        return;
    case OutputFormat::Table: {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%3s  %-16s  %-16s  %-16s\n", "k", "rho_k", "sigma_k",
                      "gap");
        out << buf;
        for (std::size_t k = 0; k < r.rho.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%3zu  %-16.9g  %-16.9g  %-16.9g\n", k, r.rho[k],
                          r.sigma[k], r.sigma[k] - r.rho[k]);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, "interval: [%.9g, %.9g]  converged: %s  n: %zu\n",
                      r.interval.first, r.interval.second, r.converged ? "yes" : "no", r.n);
        out << buf;
        return;
    }
    }
}

}  // namespace specbound
