#include "rddr/csv.hpp"
#include "rddr/error.hpp"
#include "rddr/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

namespace rddr {
namespace {

TEST(ParseMatrixCsv, Basic) {
  const auto m = parse_matrix_csv("1,2,3\n4, 5 ,6e-1\r\n");
  EXPECT_EQ(m, DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 0.6}}));
}

TEST(ParseMatrixCsv, NoTrailingNewlineAndTrailingBlankLines) {
  EXPECT_EQ(parse_matrix_csv("1,2"), DenseMatrix::from_rows({{1, 2}}));
  EXPECT_EQ(parse_matrix_csv("1\n2\n\n"), DenseMatrix::from_rows({{1}, {2}}));
}

TEST(ParseMatrixCsv, RaggedRowsReportLine) {
  try {
    parse_matrix_csv("1,2\n3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::RaggedRows);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ParseMatrixCsv, EmptyInput) {
  for (const char* text : {"", "\n", "  \n\n"}) {
    try {
      parse_matrix_csv(text);
      FAIL() << "accepted '" << text << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::EmptyFile);
    }
  }
}

TEST(ParseMatrixCsv, BadTokenLocation) {
  try {
    parse_matrix_csv("1,2\n3,x4\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 2);  // 1-based field index
  }
  EXPECT_THROW(parse_matrix_csv("1,,2\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,2\n\n3,4\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,nan\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,inf\n"), ParseError);
  EXPECT_THROW(parse_matrix_csv("1,1e999\n"), ParseError);
}

TEST(FormatMatrixCsv, NegativeZeroAndRoundTrip) {
  const auto m = DenseMatrix::from_rows({{-0.0, 0.1}, {1.0 / 3.0, -2.5e-300}});
  const auto text = format_matrix_csv(m);
  EXPECT_EQ(text.substr(0, 2), "0,");
  EXPECT_EQ(parse_matrix_csv(text), m);
}

TEST(FormatMatrixCsv, RoundTripProperty) {
  RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = static_cast<Eigen::Index>(1 + rng.below(6));
    const auto c = static_cast<Eigen::Index>(1 + rng.below(6));
    Eigen::MatrixXd a(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        a(i, j) = rng.normal() * std::pow(10.0, static_cast<double>(rng.below(40)) - 20.0);
      }
    }
    const DenseMatrix m(a);
    EXPECT_EQ(parse_matrix_csv(format_matrix_csv(m)), m);
  }
}

TEST(MatrixCsvFiles, WriteReadAndIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "rddr_csv_test";
  std::filesystem::create_directories(dir);
  const auto m = DenseMatrix::from_rows({{1.5, -2}, {3, 4}});
  write_matrix_csv(m, dir / "m.csv");
  EXPECT_EQ(read_matrix_csv(dir / "m.csv"), m);
  try {
    read_matrix_csv(dir / "missing.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
  EXPECT_THROW(write_matrix_csv(m, dir / "no_such_dir" / "m.csv"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace rddr
