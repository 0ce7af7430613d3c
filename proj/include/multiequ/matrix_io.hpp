// Matrix ingestion: plain CSV (n rows of n comma-separated values) and JSON
// objects of the form {"n": int, "rows": [[...], ...]}.
#pragma once

#include <multiequ/types.hpp>

#include <iosfwd>
#include <string>

namespace multiequ {

/// Parse errors carry a human-readable location.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_json(std::istream& in);

/// Dispatches on the file extension (.json for JSON, anything else CSV).
Matrix read_matrix_file(const std::string& path);

void write_matrix_csv(std::ostream& out, const Matrix& m);

} // namespace multiequ
