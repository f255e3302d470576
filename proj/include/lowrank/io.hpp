#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lowrank/core.hpp"

namespace lowrank {

enum class MarketFormat { Array, Coordinate };

namespace detail {

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] inline void parse_fail(const std::string& path, long line, const std::string& what) {
    throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

inline bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

template <typename Int>
bool parse_int(const std::string& token, Int& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

inline std::string format_double_17g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_double_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace detail

/**
 * @brief Reads a dense matrix from a MatrixMarket file (array or coordinate,
 *        real, general). Parse errors carry the offending line number.
 */
inline MatrixX<double> read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ":0: cannot open file");

    long line_no = 0;
    std::string line;
    if (!std::getline(in, line)) detail::parse_fail(path, 1, "empty file");
    ++line_no;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") detail::parse_fail(path, line_no, "missing MatrixMarket banner");
    object = detail::lower(object);
    format = detail::lower(format);
    field = detail::lower(field);
    symmetry = detail::lower(symmetry);
    if (object != "matrix") detail::parse_fail(path, line_no, "unsupported object '" + object + "'");
    if (format != "array" && format != "coordinate")
        detail::parse_fail(path, line_no, "unsupported format '" + format + "'");
    if (field != "real") detail::parse_fail(path, line_no, "unsupported field '" + field + "'");
    if (symmetry != "general")
        detail::parse_fail(path, line_no, "unsupported symmetry '" + symmetry + "'");

    auto next_content_line = [&](std::string& out_line) {
        while (std::getline(in, out_line)) {
            ++line_no;
            if (out_line.empty() || out_line[0] == '%') continue;
            bool blank = std::all_of(out_line.begin(), out_line.end(),
                                     [](unsigned char c) { return std::isspace(c); });
            if (!blank) return true;
        }
        return false;
    };

    std::string sizes;
    if (!next_content_line(sizes)) detail::parse_fail(path, line_no, "missing size line");

    std::istringstream size_stream(sizes);
    std::string tok_rows, tok_cols, tok_nnz;
    Index rows = 0, cols = 0;
    std::int64_t nnz = 0;
    size_stream >> tok_rows >> tok_cols;
    if (!detail::parse_int(tok_rows, rows) || !detail::parse_int(tok_cols, cols) ||
        rows < 1 || cols < 1)
        detail::parse_fail(path, line_no, "invalid dimensions");

    MatrixX<double> a;
    if (format == "array") {
        a.resize(rows, cols);
        // array files store entries in column-major order
        Index count = 0;
        std::string entry_line;
        while (count < rows * cols) {
            if (!next_content_line(entry_line))
                detail::parse_fail(path, line_no, "unexpected end of file, expected " +
                                                      std::to_string(rows * cols) + " entries");
            std::istringstream entries(entry_line);
            std::string token;
            while (entries >> token) {
                if (count >= rows * cols)
                    detail::parse_fail(path, line_no, "more entries than rows*cols");
                double value = 0;
                if (!detail::parse_double(token, value))
                    detail::parse_fail(path, line_no, "invalid real value '" + token + "'");
                if (!std::isfinite(value))
                    detail::parse_fail(path, line_no, "non-finite value '" + token + "'");
                a(count % rows, count / rows) = value;
                ++count;
            }
        }
    } else {
        size_stream >> tok_nnz;
        if (!detail::parse_int(tok_nnz, nnz) || nnz < 0)
            detail::parse_fail(path, line_no, "invalid nonzero count");
        a = MatrixX<double>::Zero(rows, cols);
        std::string entry_line;
        for (std::int64_t e = 0; e < nnz; ++e) {
            if (!next_content_line(entry_line))
                detail::parse_fail(path, line_no, "unexpected end of file, expected " +
                                                      std::to_string(nnz) + " entries");
            std::istringstream entry(entry_line);
            std::string tok_i, tok_j, tok_v;
            entry >> tok_i >> tok_j >> tok_v;
            Index i = 0, j = 0;
            double value = 0;
            if (!detail::parse_int(tok_i, i) || !detail::parse_int(tok_j, j))
                detail::parse_fail(path, line_no, "invalid coordinate indices");
            if (i < 1 || i > rows || j < 1 || j > cols)
                detail::parse_fail(path, line_no, "coordinate index out of bounds");
            if (!detail::parse_double(tok_v, value))
                detail::parse_fail(path, line_no, "invalid real value '" + tok_v + "'");
            if (!std::isfinite(value))
                detail::parse_fail(path, line_no, "non-finite value '" + tok_v + "'");
            a(i - 1, j - 1) += value;
        }
    }
    return a;
}

/// Writes a dense matrix as MatrixMarket `array` (all entries, column-major
/// order) or `coordinate` (nonzero entries, 1-indexed); values carry 17
/// significant digits so reads round-trip exactly.
template <typename Derived>
void write_matrix_market(const std::string& path, const Eigen::MatrixBase<Derived>& a,
                         MarketFormat format = MarketFormat::Array) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_matrix_market: cannot open " + path);
    if (format == MarketFormat::Array) {
        out << "%%MatrixMarket matrix array real general\n";
        out << a.rows() << " " << a.cols() << "\n";
        for (Index j = 0; j < a.cols(); ++j)
            for (Index i = 0; i < a.rows(); ++i)
                out << detail::format_double_17g(static_cast<double>(a(i, j))) << "\n";
    } else {
        std::int64_t nnz = 0;
        for (Index j = 0; j < a.cols(); ++j)
            for (Index i = 0; i < a.rows(); ++i)
                if (a(i, j) != 0) ++nnz;
        out << "%%MatrixMarket matrix coordinate real general\n";
        out << a.rows() << " " << a.cols() << " " << nnz << "\n";
        for (Index j = 0; j < a.cols(); ++j)
            for (Index i = 0; i < a.rows(); ++i)
                if (a(i, j) != 0)
                    out << (i + 1) << " " << (j + 1) << " "
                        << detail::format_double_17g(static_cast<double>(a(i, j))) << "\n";
    }
    if (!out) throw std::runtime_error("write_matrix_market: write failed for " + path);
}

/// Compact binary format: rows and cols as little-endian 64-bit integers,
/// then the entries as row-major doubles.
template <typename Derived>
void write_matrix_binary(const std::string& path, const Eigen::MatrixBase<Derived>& a) {
    static_assert(std::endian::native == std::endian::little,
                  "binary matrix format assumes a little-endian host");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_matrix_binary: cannot open " + path);
    const std::int64_t dims[2] = {a.rows(), a.cols()};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            const double v = static_cast<double>(a(i, j));
            out.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    if (!out) throw std::runtime_error("write_matrix_binary: write failed for " + path);
}

inline MatrixX<double> read_matrix_binary(const std::string& path) {
    static_assert(std::endian::native == std::endian::little,
                  "binary matrix format assumes a little-endian host");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ":0: cannot open file");
    std::int64_t dims[2] = {0, 0};
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    if (!in || dims[0] < 1 || dims[1] < 1)
        throw ParseError(path + ":0: invalid binary matrix header");
    MatrixX<double> a(dims[0], dims[1]);
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            double v = 0;
            in.read(reinterpret_cast<char*>(&v), sizeof(v));
            if (!in) throw ParseError(path + ":0: truncated binary matrix payload");
            a(i, j) = v;
        }
    return a;
}

/// One benchmark measurement: a (matrix, method, rank, trial) cell.
struct ResultRecord {
    std::string matrix_id;
    std::string method;
    int k = 0;
    std::uint64_t trial_seed = 0;
    double rel_spectral = 0.0;
    double rel_frob = 0.0;
    double elapsed_ms = 0.0;
    std::int64_t storage_units = 0;
};

inline constexpr const char* kResultsCsvHeader =
    "matrix_id,method,k,trial_seed,rel_spectral,rel_frob,elapsed_ms,storage_units";

/// Writes benchmark records as CSV; reals use the shortest decimal that
/// round-trips, so read_results_csv reproduces them bit-exactly.
inline void write_results_csv(const std::string& path, const std::vector<ResultRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_results_csv: cannot open " + path);
    out << kResultsCsvHeader << "\n";
    for (const ResultRecord& r : records) {
        if (r.k < 1) throw std::invalid_argument("write_results_csv: k must be at least 1");
        if (r.rel_spectral < 0 || r.rel_frob < 0)
            throw std::invalid_argument("write_results_csv: relative errors must be nonnegative");
        out << r.matrix_id << "," << r.method << "," << r.k << "," << r.trial_seed << ","
            << detail::format_double_shortest(r.rel_spectral) << ","
            << detail::format_double_shortest(r.rel_frob) << ","
            << detail::format_double_shortest(r.elapsed_ms) << "," << r.storage_units << "\n";
    }
    if (!out) throw std::runtime_error("write_results_csv: write failed for " + path);
}

inline std::vector<ResultRecord> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ":0: cannot open file");
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) detail::parse_fail(path, 1, "empty file");
    ++line_no;
    if (line != kResultsCsvHeader) detail::parse_fail(path, line_no, "unexpected CSV header");

    std::vector<ResultRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string::size_type start = 0;
        while (true) {
            auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 8) detail::parse_fail(path, line_no, "expected 8 fields");
        ResultRecord r;
        r.matrix_id = fields[0];
        r.method = fields[1];
        if (!detail::parse_int(fields[2], r.k) || r.k < 1)
            detail::parse_fail(path, line_no, "invalid rank field");
        if (!detail::parse_int(fields[3], r.trial_seed))
            detail::parse_fail(path, line_no, "invalid seed field");
        if (!detail::parse_double(fields[4], r.rel_spectral) || r.rel_spectral < 0)
            detail::parse_fail(path, line_no, "invalid rel_spectral field");
        if (!detail::parse_double(fields[5], r.rel_frob) || r.rel_frob < 0)
            detail::parse_fail(path, line_no, "invalid rel_frob field");
        if (!detail::parse_double(fields[6], r.elapsed_ms))
            detail::parse_fail(path, line_no, "invalid elapsed_ms field");
        if (!detail::parse_int(fields[7], r.storage_units))
            detail::parse_fail(path, line_no, "invalid storage_units field");
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace lowrank
