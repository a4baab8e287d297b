#pragma once

#include "rddr/matrix.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace rddr {

/// Parses comma-separated decimals, one matrix row per line, no header.
/// Throws ParseError (ParseError / RaggedRows / EmptyFile) with a 1-based
/// line and field location.
DenseMatrix parse_matrix_csv(std::string_view text);
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

/// Each value is printed with 17 significant digits ("%.17g"), so parsing
/// the output reproduces the matrix exactly.
std::string format_matrix_csv(const DenseMatrix& m);
/// Throws Error(IoError) when the file cannot be written.
void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path);

}  // namespace rddr
