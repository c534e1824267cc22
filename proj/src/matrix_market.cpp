#include "spm/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace spm {

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

struct Header {
    bool coordinate = true;
    bool symmetric = false;
};

// Reads lines until a non-comment, non-blank one appears.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

std::size_t parse_size(const std::string& tok, std::size_t lineno, const char* what) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw MatrixMarketError(lineno, std::string("invalid ") + what + " '" + tok + "'");
    }
    return value;
}

double parse_real(const std::string& tok, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw MatrixMarketError(lineno, "invalid numeric value '" + tok + "'");
    }
}

Header parse_banner(std::istream& in, std::size_t& lineno) {
    std::string line;
    if (!std::getline(in, line)) throw MatrixMarketError(1, "empty file");
    ++lineno;
    auto tokens = split_ws(line);
    if (tokens.size() != 5 || tokens[0] != "%%MatrixMarket") {
        throw MatrixMarketError(lineno, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
    }
    if (to_lower(tokens[1]) != "matrix") {
        throw MatrixMarketError(lineno, "unsupported object '" + tokens[1] + "'");
    }
    Header h;
    const std::string format = to_lower(tokens[2]);
    if (format == "coordinate") {
        h.coordinate = true;
    } else if (format == "array") {
        h.coordinate = false;
    } else {
        throw MatrixMarketError(lineno, "unsupported format '" + tokens[2] + "'");
    }
    const std::string field = to_lower(tokens[3]);
    if (field != "real" && field != "integer") {
        throw MatrixMarketError(lineno, "unsupported field '" + tokens[3] + "'");
    }
    const std::string symmetry = to_lower(tokens[4]);
    if (symmetry == "symmetric") {
        h.symmetric = true;
    } else if (symmetry == "general") {
        h.symmetric = false;
    } else {
        throw MatrixMarketError(lineno, "unsupported symmetry '" + tokens[4] + "'");
    }
    return h;
}

std::unique_ptr<SpdOperator> read_coordinate(std::istream& in, const Header& h, std::size_t n,
                                             std::size_t nnz, std::size_t& lineno) {
    std::vector<CscSpd::Triplet> triplets;
    std::vector<std::size_t> entry_lines;
    triplets.reserve(h.symmetric ? 2 * nnz : nnz);
    entry_lines.reserve(nnz);

    std::string line;
    for (std::size_t k = 0; k < nnz; ++k) {
        if (!next_content_line(in, line, lineno)) {
            throw MatrixMarketError(lineno + 1, "unexpected end of file: expected " +
                                                    std::to_string(nnz) + " entries, got " +
                                                    std::to_string(k));
        }
        auto tokens = split_ws(line);
        if (tokens.size() != 3) {
            throw MatrixMarketError(lineno, "expected 'row col value'");
        }
        std::size_t i = parse_size(tokens[0], lineno, "row index");
        std::size_t j = parse_size(tokens[1], lineno, "column index");
        double v = parse_real(tokens[2], lineno);
        if (i < 1 || i > n || j < 1 || j > n) {
            throw MatrixMarketError(lineno, "entry (" + tokens[0] + ", " + tokens[1] +
                                                ") outside a " + std::to_string(n) + "x" +
                                                std::to_string(n) + " matrix");
        }
        --i;
        --j;
        if (h.symmetric && i < j) {
            throw MatrixMarketError(lineno, "symmetric files must store the lower triangle");
        }
        triplets.push_back({i, j, v});
        entry_lines.push_back(lineno);
        if (h.symmetric && i != j) triplets.push_back({j, i, v});
    }
    if (next_content_line(in, line, lineno)) {
        throw MatrixMarketError(lineno, "trailing data after " + std::to_string(nnz) + " entries");
    }

    // Reject duplicates so a bad file cannot silently sum; report the later line.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> keys;
    keys.reserve(entry_lines.size());
    {
        std::size_t t = 0;
        for (std::size_t k = 0; k < entry_lines.size(); ++k) {
            keys.push_back({{triplets[t].row, triplets[t].col}, entry_lines[k]});
            t += (h.symmetric && triplets[t].row != triplets[t].col) ? 2 : 1;
        }
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t k = 1; k < keys.size(); ++k) {
        if (keys[k].first == keys[k - 1].first) {
            throw MatrixMarketError(std::max(keys[k].second, keys[k - 1].second),
                                    "duplicate entry (" + std::to_string(keys[k].first.first + 1) +
                                        ", " + std::to_string(keys[k].first.second + 1) + ")");
        }
    }

    try {
        return std::make_unique<CscSpd>(CscSpd::from_triplets(n, std::move(triplets)));
    } catch (const std::invalid_argument& e) {
        throw MatrixMarketError(lineno, e.what());  // nonsymmetric general pattern
    }
}

std::unique_ptr<SpdOperator> read_array(std::istream& in, const Header& h, std::size_t n,
                                        std::size_t& lineno) {
    const std::size_t count = h.symmetric ? n * (n + 1) / 2 : n * n;
    std::vector<double> data(n * n, 0.0);
    std::vector<std::size_t> value_lines(count, 0);

    std::string line;
    std::size_t k = 0;
    std::size_t i = 0;  // array files are column-major; symmetric ones store i >= j
    std::size_t j = 0;
    if (h.symmetric) i = j;
    while (k < count) {
        if (!next_content_line(in, line, lineno)) {
            throw MatrixMarketError(lineno + 1, "unexpected end of file: expected " +
                                                    std::to_string(count) + " values, got " +
                                                    std::to_string(k));
        }
        for (const std::string& tok : split_ws(line)) {
            if (k == count) throw MatrixMarketError(lineno, "trailing data after matrix values");
            const double v = parse_real(tok, lineno);
            data[i * n + j] = v;
            if (h.symmetric) data[j * n + i] = v;
            value_lines[k] = lineno;
            ++k;
            if (++i == n) {
                ++j;
                i = h.symmetric ? j : 0;
            }
        }
    }
    if (next_content_line(in, line, lineno)) {
        throw MatrixMarketError(lineno, "trailing data after matrix values");
    }

    if (!h.symmetric) {
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t row = col + 1; row < n; ++row) {
                if (data[row * n + col] != data[col * n + row]) {
                    // value index of (row, col) in column-major order
                    throw MatrixMarketError(value_lines[col * n + row],
                                            "matrix is not symmetric at (" + std::to_string(row + 1) +
                                                ", " + std::to_string(col + 1) + ")");
                }
            }
        }
    }
    return std::make_unique<DenseSpd>(n, std::move(data));
}

void format_value(std::ostream& out, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    out.write(buf, ptr - buf);
}

}  // namespace

std::unique_ptr<SpdOperator> read_matrix_market(std::istream& in) {
    std::size_t lineno = 0;
    const Header h = parse_banner(in, lineno);

    std::string line;
    if (!next_content_line(in, line, lineno)) {
        throw MatrixMarketError(lineno + 1, "missing size line");
    }
    auto tokens = split_ws(line);
    const std::size_t expected = h.coordinate ? 3 : 2;
    if (tokens.size() != expected) {
        throw MatrixMarketError(lineno, h.coordinate ? "expected 'rows cols nnz'"
                                                     : "expected 'rows cols'");
    }
    const std::size_t rows = parse_size(tokens[0], lineno, "row count");
    const std::size_t cols = parse_size(tokens[1], lineno, "column count");
    if (rows != cols) {
        throw MatrixMarketError(lineno, "matrix is not square (" + std::to_string(rows) + "x" +
                                            std::to_string(cols) + ")");
    }
    if (rows == 0) throw MatrixMarketError(lineno, "matrix dimension must be positive");

    if (h.coordinate) {
        const std::size_t nnz = parse_size(tokens[2], lineno, "entry count");
        return read_coordinate(in, h, rows, nnz, lineno);
    }
    return read_array(in, h, rows, lineno);
}

std::unique_ptr<SpdOperator> read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_matrix_market(in);
}

void write_matrix_market(const SpdOperator& op, std::ostream& out) {
    const std::size_t n = op.dim();
    if (const auto* dense = dynamic_cast<const DenseSpd*>(&op)) {
        out << "%%MatrixMarket matrix array real general\n";
        out << n << " " << n << "\n";
        const auto& d = dense->data();
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                format_value(out, d[i * n + j]);
                out.put('\n');
            }
        }
        return;
    }

    // Coordinate symmetric: nonzeros of the lower triangle, column by column.
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> entries;
    Vector col;
    for (std::size_t j = 0; j < n; ++j) {
        op.column(j, col);
        for (std::size_t i = j; i < n; ++i) {
            if (col[i] != 0.0) entries.push_back({{i, j}, col[i]});
        }
    }
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << " " << n << " " << entries.size() << "\n";
    for (const auto& [ij, v] : entries) {
        out << (ij.first + 1) << " " << (ij.second + 1) << " ";
        format_value(out, v);
        out.put('\n');
    }
}

void write_matrix_market(const SpdOperator& op, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_matrix_market(op, out);
    if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace spm
