#include "rddr/csv.hpp"

#include "rddr/error.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace rddr {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string location(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double parse_value(std::string_view token, std::size_t line, std::size_t column) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(ErrorCode::ParseError,
                     "non-numeric token '" + std::string(token) + "' at " +
                         location(line, column),
                     line, column);
  }
  if (!std::isfinite(value)) {
    throw ParseError(ErrorCode::ParseError,
                     "non-finite value at " + location(line, column), line, column);
  }
  return value;
}

}  // namespace

DenseMatrix parse_matrix_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) {
      // Trailing blank lines are tolerated; interior ones are not.
      if (trim(text).empty()) break;
      throw ParseError(ErrorCode::RaggedRows,
                       "empty row at " + location(line_no, 1), line_no, 1);
    }
    std::size_t field = 0;
    while (true) {
      const auto comma = line.find(',');
      values.push_back(parse_value(line.substr(0, comma), line_no, field + 1));
      ++field;
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = field;
    } else if (field != cols) {
      throw ParseError(ErrorCode::RaggedRows,
                       "line " + std::to_string(line_no) + " has " +
                           std::to_string(field) + " fields, expected " +
                           std::to_string(cols),
                       line_no, std::min(field, cols) + 1);
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(ErrorCode::EmptyFile, "empty matrix file", 1, 1);

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
    }
  }
  return DenseMatrix(std::move(m));
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_matrix_csv(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.code(), path.string() + ": " + e.what(), e.line(), e.column());
  }
}

std::string format_matrix_csv(const DenseMatrix& m) {
  std::string out;
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out.push_back(',');
      // Normalize -0 so byte output depends only on the value.
      const double v = m(r, c) == 0.0 ? 0.0 : m(r, c);
      const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
      out.append(buf, static_cast<std::size_t>(len));
    }
    out.push_back('\n');
  }
  return out;
}

void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  const std::string text = format_matrix_csv(m);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace rddr
