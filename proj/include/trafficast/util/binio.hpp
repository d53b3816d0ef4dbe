#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trafficast/common.hpp"

// Little-endian binary primitives shared by the file formats. Host is assumed
// little-endian (checked once at startup by the CLI, asserted here in debug).

namespace trafficast::binio {

inline void write_raw(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!os) throw IoError("write failed");
}

inline void read_raw(std::istream& is, void* p, std::size_t n) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is.gcount()) != n) throw IoError("unexpected end of file");
}

inline void write_i64(std::ostream& os, std::int64_t v) { write_raw(os, &v, 8); }
inline void write_f64(std::ostream& os, double v) { write_raw(os, &v, 8); }

inline std::int64_t read_i64(std::istream& is) {
    std::int64_t v;
    read_raw(is, &v, 8);
    return v;
}

inline double read_f64(std::istream& is) {
    double v;
    read_raw(is, &v, 8);
    return v;
}

inline void write_magic(std::ostream& os, const char* magic) {
    write_raw(os, magic, std::strlen(magic));
}

inline void expect_magic(std::istream& is, const char* magic, const char* what) {
    std::string got(std::strlen(magic), '\0');
    read_raw(is, got.data(), got.size());
    if (got != magic) {
        throw ValidationError(std::string(what) + ": bad magic, expected '" + magic + "'");
    }
}

inline void write_vec(std::ostream& os, const Eigen::VectorXd& v) {
    write_i64(os, v.size());
    write_raw(os, v.data(), static_cast<std::size_t>(v.size()) * 8);
}

inline Eigen::VectorXd read_vec(std::istream& is) {
    std::int64_t n = read_i64(is);
    if (n < 0) throw ValidationError("negative vector length in stream");
    Eigen::VectorXd v(n);
    read_raw(is, v.data(), static_cast<std::size_t>(n) * 8);
    return v;
}

// Matrices travel row-major regardless of Eigen's in-memory layout.
inline void write_mat(std::ostream& os, const Eigen::MatrixXd& m) {
    write_i64(os, m.rows());
    write_i64(os, m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) write_f64(os, m(r, c));
}

inline Eigen::MatrixXd read_mat(std::istream& is) {
    std::int64_t rows = read_i64(is);
    std::int64_t cols = read_i64(is);
    if (rows < 0 || cols < 0) throw ValidationError("negative matrix shape in stream");
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = read_f64(is);
    return m;
}

inline void write_i64_vec(std::ostream& os, const std::vector<std::int64_t>& v) {
    write_i64(os, static_cast<std::int64_t>(v.size()));
    for (auto x : v) write_i64(os, x);
}

inline std::vector<std::int64_t> read_i64_vec(std::istream& is) {
    std::int64_t n = read_i64(is);
    if (n < 0) throw ValidationError("negative vector length in stream");
    std::vector<std::int64_t> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = read_i64(is);
    return v;
}

} // namespace trafficast::binio
