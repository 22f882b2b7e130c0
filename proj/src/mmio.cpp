#include "opnorm/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace opnorm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool next_data_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '%') continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(const std::string& label, long lineno, const std::string& msg) {
    throw ParseError(label + ":" + std::to_string(lineno) + ": " + msg);
}

}  // namespace

SymMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_matrix_market(in, path);
}

SymMatrix read_matrix_market(std::istream& in, const std::string& label) {
    long lineno = 0;
    std::string line;
    if (!std::getline(in, line)) fail(label, 1, "empty file");
    ++lineno;

    std::istringstream banner(line);
    std::string magic, object, format, field, symmetry;
    banner >> magic >> object >> format >> field >> symmetry;
    if (magic != "%%MatrixMarket") fail(label, lineno, "missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix") fail(label, lineno, "unsupported object '" + object + "'");
    if (format != "coordinate" && format != "array") fail(label, lineno, "unsupported format '" + format + "'");
    if (field != "real" && field != "integer" && field != "pattern") {
        fail(label, lineno, "unsupported field '" + field + "'");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        fail(label, lineno, "unsupported symmetry '" + symmetry + "'");
    }
    if (field == "pattern" && format == "array") fail(label, lineno, "pattern array is not valid Matrix Market");

    if (!next_data_line(in, line, lineno)) fail(label, lineno, "missing size line");
    std::istringstream size_line(line);
    long rows = 0, cols = 0, nnz = 0;
    if (format == "coordinate") {
        if (!(size_line >> rows >> cols >> nnz)) fail(label, lineno, "bad coordinate size line");
    } else {
        if (!(size_line >> rows >> cols)) fail(label, lineno, "bad array size line");
    }
    if (rows != cols || rows <= 0) fail(label, lineno, "matrix must be square and nonempty");
    const int n = static_cast<int>(rows);

    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    auto at = [&](long i, long j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

    if (format == "coordinate") {
        for (long k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line, lineno)) fail(label, lineno, "unexpected end of file in entry list");
            std::istringstream es(line);
            long i = 0, j = 0;
            double v = 1.0;
            if (!(es >> i >> j)) fail(label, lineno, "bad entry line");
            if (field != "pattern" && !(es >> v)) fail(label, lineno, "missing value");
            if (i < 1 || j < 1 || i > n || j > n) fail(label, lineno, "index out of range");
            --i;
            --j;
            if (symmetry == "symmetric" && j > i) fail(label, lineno, "symmetric file stores lower triangle only");
            at(i, j) = v;
            if (symmetry == "symmetric") at(j, i) = v;
        }
    } else {
        // column-major; symmetric arrays store the lower triangle incl. diagonal
        for (long j = 0; j < n; ++j) {
            for (long i = (symmetry == "symmetric" ? j : 0); i < n; ++i) {
                if (!next_data_line(in, line, lineno)) fail(label, lineno, "unexpected end of file in array data");
                std::istringstream es(line);
                double v = 0.0;
                if (!(es >> v)) fail(label, lineno, "bad array value");
                at(i, j) = v;
                if (symmetry == "symmetric") at(j, i) = v;
            }
        }
    }

    if (symmetry == "general") {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (at(i, j) != at(j, i)) fail(label, lineno, "general file is not symmetric");
            }
        }
    }
    for (double v : a) {
        if (!(v >= 0.0)) fail(label, lineno, "negative or non-finite entry");
    }
    return SymMatrix(n, std::move(a));
}

void write_matrix_market(const std::string& path, const SymMatrix& A, MmFormat format) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_matrix_market(out, A, format);
}

void write_matrix_market(std::ostream& out, const SymMatrix& A, MmFormat format) {
    const int n = A.n();
    char buf[64];
    if (format == MmFormat::coordinate) {
        long nnz = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                if (A(i, j) != 0.0) ++nnz;
            }
        }
        out << "%%MatrixMarket matrix coordinate real symmetric\n";
        out << n << " " << n << " " << nnz << "\n";
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                if (A(i, j) != 0.0) {
                    std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
                    out << (i + 1) << " " << (j + 1) << " " << buf << "\n";
                }
            }
        }
    } else {
        out << "%%MatrixMarket matrix array real symmetric\n";
        out << n << " " << n << "\n";
        for (int j = 0; j < n; ++j) {
            for (int i = j; i < n; ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g", A(i, j));
                out << buf << "\n";
            }
        }
    }
}

}  // namespace opnorm
