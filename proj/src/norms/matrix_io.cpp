#include "uhw/norms/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace uhw::norms {

static_assert(std::endian::native == std::endian::little, "binary matrix layout assumes a little-endian host");

void write_matrix_csv(std::ostream& out, const DenseMatrix& a) {
  char buf[32];
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const double v = std::stod(cell);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("matrix csv: ragged row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix csv: no rows");
  DenseMatrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  }
  validate_matrix(a);
  return a;
}

void write_matrix_binary(std::ostream& out, const DenseMatrix& a) {
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(a.rows()), static_cast<std::uint64_t>(a.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double v = a(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  }
}

DenseMatrix read_matrix_binary(std::istream& in) {
  std::uint64_t dims[2];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof dims)) throw std::invalid_argument("matrix binary: truncated header");
  if (dims[0] == 0 || dims[1] == 0 || dims[0] > (1u << 20) || dims[1] > (1u << 20)) {
    throw std::invalid_argument("matrix binary: implausible dimensions");
  }
  DenseMatrix a(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::invalid_argument("matrix binary: truncated data");
      a(i, j) = v;
    }
  }
  validate_matrix(a);
  return a;
}

void write_family_binary(const std::filesystem::path& path, const std::vector<DenseMatrix>& members) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (const auto& a : members) write_matrix_binary(out, a);
}

std::vector<DenseMatrix> read_family_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<DenseMatrix> members;
  while (in.peek() != std::char_traits<char>::eof()) members.push_back(read_matrix_binary(in));
  return members;
}

}  // namespace uhw::norms
