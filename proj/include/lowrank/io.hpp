#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lowrank/projections.hpp"

namespace lowrank {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline double parse_real(std::string_view field, const std::string& where, int line) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(where + ":" + std::to_string(line) + ": expected a number, got \"" +
                                 std::string(field) + "\"");
    if (!std::isfinite(value))
        throw std::runtime_error(where + ":" + std::to_string(line) + ": non-finite value");
    return value;
}

inline long parse_int(std::string_view field, const std::string& where, int line) {
    field = trim(field);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error(where + ":" + std::to_string(line) + ": expected an integer, got \"" +
                                 std::string(field) + "\"");
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

inline bool blank(std::string_view line) { return trim(line).empty(); }

}  // namespace detail

/// Matrix text format: one row per line, comma-separated decimal entries,
/// no header. Dimensions are inferred; ragged rows are rejected.
inline Matrix read_matrix(std::istream& in, const std::string& where = "<matrix>") {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        const auto fields = detail::split_fields(line);
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw std::runtime_error(where + ":" + std::to_string(lineno) + ": ragged row (" +
                                     std::to_string(fields.size()) + " entries, expected " +
                                     std::to_string(width) + ")");
        std::vector<double> row;
        row.reserve(width);
        for (const auto f : fields) row.push_back(detail::parse_real(f, where, lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(where + ": empty matrix");
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
    char buf[40];
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

/// Sample set text format: one "i,j,value" triple per line, 0-based indices.
inline SampleSet read_samples(std::istream& in, Index rows, Index cols,
                              const std::string& where = "<samples>") {
    std::vector<SampleSet::Entry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != 3)
            throw std::runtime_error(where + ":" + std::to_string(lineno) +
                                     ": expected \"i,j,value\"");
        SampleSet::Entry e;
        e.i = detail::parse_int(fields[0], where, lineno);
        e.j = detail::parse_int(fields[1], where, lineno);
        e.value = detail::parse_real(fields[2], where, lineno);
        entries.push_back(e);
    }
    try {
        return make_sample_set(rows, cols, std::move(entries));
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(where + ": " + err.what());
    }
}

inline void write_samples(std::ostream& out, const SampleSet& s) {
    char buf[40];
    for (const auto& e : s.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out << e.i << ',' << e.j << ',' << buf << '\n';
    }
}

/// Sequence file: one real per line.
inline Vector read_sequence(std::istream& in, const std::string& where = "<sequence>") {
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::blank(line)) continue;
        values.push_back(detail::parse_real(line, where, lineno));
    }
    if (values.empty()) throw std::runtime_error(where + ": empty sequence");
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

inline void write_sequence(std::ostream& out, const Vector& h) {
    char buf[40];
    for (Index i = 0; i < h.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", h[i]);
        out << buf << '\n';
    }
}

inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    return read_matrix(in, path);
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    write_matrix(out, m);
}

inline SampleSet read_samples_file(const std::string& path, Index rows, Index cols) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    return read_samples(in, rows, cols, path);
}

inline Vector read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    return read_sequence(in, path);
}

}  // namespace lowrank
