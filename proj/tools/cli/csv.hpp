#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cli {

//! file could not be opened or written; maps to exit code 3
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Csv {
    std::vector<std::string> header;
    Eigen::MatrixXd values;
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::string strip_cr(std::string line)
{
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

} // namespace detail

//! read a numeric CSV with a mandatory header row
//!
//! Throws IoError if the file cannot be opened and invalid_argument (with the
//! 1-based row number) on malformed content.
inline Csv read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("'" + path + "': empty file, expected a header row");
    Csv csv;
    csv.header = detail::split_fields(detail::strip_cr(line));
    const std::size_t ncol = csv.header.size();

    std::vector<double> flat;
    std::size_t nrow = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip_cr(line);
        if (line.empty())
            continue;
        const auto fields = detail::split_fields(line);
        if (fields.size() != ncol)
            throw std::invalid_argument("'" + path + "' row " + std::to_string(lineno) + ": has "
                                        + std::to_string(fields.size()) + " fields, expected "
                                        + std::to_string(ncol));
        for (std::size_t j = 0; j < ncol; ++j) {
            const std::string& tok = fields[j];
            double v = 0.0;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                throw std::invalid_argument("'" + path + "' row " + std::to_string(lineno)
                                            + ", column " + std::to_string(j + 1)
                                            + ": '" + tok + "' is not a number");
            flat.push_back(v);
        }
        ++nrow;
    }

    csv.values.resize(nrow, ncol);
    for (std::size_t i = 0; i < nrow; ++i)
        for (std::size_t j = 0; j < ncol; ++j)
            csv.values(i, j) = flat[i * ncol + j];
    return csv;
}

//! shortest decimal representation that round-trips to the same double
inline std::string format_double(double v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const Eigen::MatrixXd& values)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    std::ostringstream body;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j > 0)
            body << ',';
        body << header[j];
    }
    body << '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            if (j > 0)
                body << ',';
            body << format_double(values(i, j));
        }
        body << '\n';
    }
    out << body.str();
    if (!out)
        throw IoError("failed while writing '" + path + "'");
}

}
