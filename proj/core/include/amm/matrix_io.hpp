#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "amm/matrix.hpp"

namespace amm {

enum class MatrixMarketErrc {
  io,
  malformed_header,
  unsupported_qualifier,
  malformed_entry,
  index_out_of_range,
};

class matrix_market_error : public std::runtime_error {
 public:
  matrix_market_error(MatrixMarketErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  MatrixMarketErrc code() const noexcept { return code_; }

 private:
  MatrixMarketErrc code_;
};

/// Dense matrix from a MatrixMarket file: coordinate or array layout,
/// real/integer/double field, general or symmetric symmetry. Symmetric input
/// is mirrored; duplicate coordinate entries are summed.
RealMatrix read_matrix_market(const std::string& path);
RealMatrix read_matrix_market(std::istream& in);

/// Writes "array real general" with 17 significant digits.
void write_matrix_market(const RealMatrix& m, const std::string& path);
void write_matrix_market(const RealMatrix& m, std::ostream& out);

class csv_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rectangular comma-separated decimals; blank lines are skipped. Ragged
/// rows, non-numeric or non-finite cells throw csv_error.
RealMatrix read_csv(const std::string& path);
RealMatrix read_csv(std::istream& in);

/// 17 significant digits, so read_csv(write_csv(m)) == m bit for bit.
void write_csv(const RealMatrix& m, const std::string& path);
void write_csv(const RealMatrix& m, std::ostream& out);

/// Dispatch on extension: .mtx -> MatrixMarket, anything else -> CSV.
RealMatrix read_matrix_file(const std::string& path);

}  // namespace amm
