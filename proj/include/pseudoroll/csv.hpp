#pragma once

#include <string>
#include <vector>

#include "pseudoroll/distribution.hpp"

namespace pseudoroll {

/// Fixed float formatting for every numeric artifact: 17 significant digits
/// (%.17g), enough to round-trip any double, so identical runs produce
/// byte-identical files.
std::string format_number(double v);

/// A rectangular numeric table with named columns.  Files are assembled in
/// memory and written in one shot, so a computation error never leaves a
/// truncated file behind.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(const std::vector<double>& row);
  std::string str() const;
  void write(const std::string& path) const;
};

/// Parse a CSV file with a header row and double-valued cells.
/// Ragged rows or unparseable cells raise ParseError with file:line.
CsvTable read_csv(const std::string& path);

/// Trivialized-curve round trip.  Columns: t, x_0.., xhat_0.., a_i_j
/// (row-major), b_i_j (row-major); dimensions are recovered from the header.
CsvTable to_table(const TrivializedCurve& tc);
TrivializedCurve trivialized_from_table(const CsvTable& table);

}  // namespace pseudoroll
