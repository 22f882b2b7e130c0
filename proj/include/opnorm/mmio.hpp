#pragma once

#include <iosfwd>
#include <string>

#include "opnorm/core.hpp"

namespace opnorm {

enum class MmFormat { coordinate, array };

/// Reads a Matrix Market file into a SymMatrix. Supported banners:
/// matrix {coordinate,array} {real,integer,pattern} {general,symmetric}.
/// A square general matrix must be numerically symmetric; entries must be
/// nonnegative.
SymMatrix read_matrix_market(const std::string& path);
SymMatrix read_matrix_market(std::istream& in, const std::string& label = "<stream>");

void write_matrix_market(const std::string& path, const SymMatrix& A,
                         MmFormat format = MmFormat::coordinate);
void write_matrix_market(std::ostream& out, const SymMatrix& A,
                         MmFormat format = MmFormat::coordinate);

}  // namespace opnorm
