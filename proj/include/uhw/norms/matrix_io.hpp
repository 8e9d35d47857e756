#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "uhw/norms/matrix.hpp"

namespace uhw::norms {

/// CSV: one matrix row per line, comma separated, %.17g.
void write_matrix_csv(std::ostream& out, const DenseMatrix& a);
DenseMatrix read_matrix_csv(std::istream& in);

/// Binary record: uint64 rows, uint64 cols (little-endian), then rows*cols
/// IEEE-754 doubles in row-major order.
void write_matrix_binary(std::ostream& out, const DenseMatrix& a);
DenseMatrix read_matrix_binary(std::istream& in);

/// A family file is a concatenation of binary records up to end of file.
void write_family_binary(const std::filesystem::path& path, const std::vector<DenseMatrix>& members);
std::vector<DenseMatrix> read_family_binary(const std::filesystem::path& path);

}  // namespace uhw::norms
