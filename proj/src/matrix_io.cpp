#include <multiequ/matrix_io.hpp>

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace multiequ {

Matrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                size_t used = 0;
                double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) {
                    throw ParseError("trailing junk in cell '" + cell + "' at line " +
                                     std::to_string(lineno));
                }
                row.push_back(v);
            } catch (const std::invalid_argument&) {
                throw ParseError("cannot parse '" + cell + "' at line " + std::to_string(lineno));
            } catch (const std::out_of_range&) {
                throw ParseError("value out of range at line " + std::to_string(lineno));
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("row " + std::to_string(lineno) + " has " +
                             std::to_string(row.size()) + " cells, expected " +
                             std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty matrix file");
    if (rows.size() != rows.front().size()) {
        throw ParseError("matrix is not square: " + std::to_string(rows.size()) + " rows of " +
                         std::to_string(rows.front().size()) + " columns");
    }
    const Index n = static_cast<Index>(rows.size());
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return m;
}

Matrix read_matrix_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("rows")) {
        throw ParseError("expected object with fields \"n\" and \"rows\"");
    }
    const Index n = j["n"].get<Index>();
    const auto& rows = j["rows"];
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
        throw ParseError("\"rows\" must be an array of n rows");
    }
    Matrix m(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw ParseError("row " + std::to_string(i) + " must have n values");
        }
        for (Index k = 0; k < n; ++k) m(i, k) = row[static_cast<size_t>(k)].get<double>();
    }
    return m;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return read_matrix_json(in);
    return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
    out << std::setprecision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

} // namespace multiequ
