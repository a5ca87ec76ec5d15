#include "amm/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace amm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    return true;
  }
  return false;
}

[[noreturn]] void mm_fail(MatrixMarketErrc code, const std::string& msg) {
  throw matrix_market_error(code, "MatrixMarket: " + msg);
}

}  // namespace

RealMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) mm_fail(MatrixMarketErrc::malformed_header, "empty input");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || symmetry.empty())
    mm_fail(MatrixMarketErrc::malformed_header, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") mm_fail(MatrixMarketErrc::malformed_header, "object must be 'matrix'");
  if (format != "coordinate" && format != "array")
    mm_fail(MatrixMarketErrc::malformed_header, "unknown format '" + format + "'");
  if (field != "real" && field != "double" && field != "integer")
    mm_fail(MatrixMarketErrc::unsupported_qualifier, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    mm_fail(MatrixMarketErrc::unsupported_qualifier, "unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  if (!next_data_line(in, line)) mm_fail(MatrixMarketErrc::malformed_header, "missing size line");
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  size_line >> rows >> cols;
  if (format == "coordinate") size_line >> nnz;
  if (!size_line || rows < 0 || cols < 0 || (format == "coordinate" && nnz < 0))
    mm_fail(MatrixMarketErrc::malformed_header, "bad size line '" + line + "'");
  if (symmetric && rows != cols)
    mm_fail(MatrixMarketErrc::malformed_header, "symmetric matrix must be square");

  RealMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));

  if (format == "coordinate") {
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line))
        mm_fail(MatrixMarketErrc::malformed_entry, "expected " + std::to_string(nnz) + " entries");
      std::istringstream ls(line);
      long long i = 0, j = 0;
      std::string vs;
      ls >> i >> j >> vs;
      double v = 0.0;
      if (!ls || !parse_double(vs, v) || !std::isfinite(v))
        mm_fail(MatrixMarketErrc::malformed_entry, "bad entry '" + line + "'");
      if (i < 1 || j < 1 || i > rows || j > cols)
        mm_fail(MatrixMarketErrc::index_out_of_range,
                "index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                    std::to_string(rows) + "x" + std::to_string(cols));
      const auto r = static_cast<std::size_t>(i - 1);
      const auto c = static_cast<std::size_t>(j - 1);
      m(r, c) += v;
      if (symmetric && r != c) m(c, r) += v;
    }
  } else {
    // Column-major; symmetric arrays store the lower triangle only.
    for (long long c = 0; c < cols; ++c) {
      for (long long r = symmetric ? c : 0; r < rows; ++r) {
        if (!next_data_line(in, line))
          mm_fail(MatrixMarketErrc::malformed_entry, "array data ends early");
        double v = 0.0;
        if (!parse_double(line, v) || !std::isfinite(v))
          mm_fail(MatrixMarketErrc::malformed_entry, "bad value '" + line + "'");
        m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = v;
        if (symmetric) m(static_cast<std::size_t>(c), static_cast<std::size_t>(r)) = v;
      }
    }
  }
  return m;
}

RealMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw matrix_market_error(MatrixMarketErrc::io, "cannot open '" + path + "'");
  return read_matrix_market(in);
}

void write_matrix_market(const RealMatrix& m, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out << format17(m(r, c)) << '\n';
}

void write_matrix_market(const RealMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw matrix_market_error(MatrixMarketErrc::io, "cannot write '" + path + "'");
  write_matrix_market(m, out);
  if (!out) throw matrix_market_error(MatrixMarketErrc::io, "write failed for '" + path + "'");
}

RealMatrix read_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const auto cell = rest.substr(0, comma);
      double v = 0.0;
      if (!parse_double(cell, v))
        throw csv_error("csv line " + std::to_string(line_no) + ": non-numeric cell '" +
                        std::string(trim(cell)) + "'");
      if (!std::isfinite(v))
        throw csv_error("csv line " + std::to_string(line_no) + ": non-finite value");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw csv_error("csv line " + std::to_string(line_no) + ": expected " +
                      std::to_string(cols) + " cells, found " + std::to_string(count));
    }
    ++rows;
  }
  return RealMatrix(rows, cols, std::move(values));
}

RealMatrix read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw csv_error("cannot open '" + path + "'");
  return read_csv(in);
}

void write_csv(const RealMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format17(m(i, j));
    }
    out << '\n';
  }
}

void write_csv(const RealMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw csv_error("cannot write '" + path + "'");
  write_csv(m, out);
  if (!out) throw csv_error("write failed for '" + path + "'");
}

RealMatrix read_matrix_file(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && lower(path.substr(dot)) == ".mtx") return read_matrix_market(path);
  return read_csv(path);
}

}  // namespace amm
