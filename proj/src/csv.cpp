#include "pseudoroll/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pseudoroll {

std::string format_number(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, std::size_t(len));
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != header.size())
    throw DimensionError("CsvTable: row width does not match the header");
  rows.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += ',';
    out += header[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::string& path) const {
  const std::string body = str();  // assemble first, then touch the file
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write to " + path + " failed");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::string& path,
                  std::size_t line_no) {
  double v = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": cannot parse '" + cell + "' as a number");
  return v;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);

  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split_line(line);
      continue;
    }
    const auto cells = split_line(line);
    if (cells.size() != table.header.size())
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(table.header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_cell(cell, path, line_no));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ParseError(path + ": empty file");
  return table;
}

CsvTable to_table(const TrivializedCurve& tc) {
  if (tc.x.empty()) throw GridError("to_table: empty trivialized curve");
  const int m = int(tc.x.front().size());
  const int mh = int(tc.xhat.front().size());
  const int p = tc.b.empty() ? 0 : int(tc.b.front().rows());

  CsvTable table;
  table.header.push_back("t");
  for (int i = 0; i < m; ++i) table.header.push_back("x_" + std::to_string(i));
  for (int i = 0; i < mh; ++i)
    table.header.push_back("xhat_" + std::to_string(i));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table.header.push_back("a_" + std::to_string(i) + "_" +
                             std::to_string(j));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      table.header.push_back("b_" + std::to_string(i) + "_" +
                             std::to_string(j));

  for (std::size_t k = 0; k < tc.times.size(); ++k) {
    std::vector<double> row;
    row.reserve(table.header.size());
    row.push_back(tc.times[k]);
    for (int i = 0; i < m; ++i) row.push_back(tc.x[k](i));
    for (int i = 0; i < mh; ++i) row.push_back(tc.xhat[k](i));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) row.push_back(tc.a[k](i, j));
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) row.push_back(tc.b[k](i, j));
    table.add_row(row);
  }
  return table;
}

namespace {

// Count consecutive header columns with the given prefix, starting at `at`.
int count_prefixed(const std::vector<std::string>& header, std::size_t at,
                   const std::string& prefix) {
  int n = 0;
  while (at + std::size_t(n) < header.size() &&
         header[at + std::size_t(n)].rfind(prefix, 0) == 0)
    ++n;
  return n;
}

}  // namespace

TrivializedCurve trivialized_from_table(const CsvTable& table) {
  if (table.header.empty() || table.header.front() != "t")
    throw ParseError("trivialized curve CSV must start with a 't' column");
  const int m = count_prefixed(table.header, 1, "x_");
  const int mh = count_prefixed(table.header, 1 + std::size_t(m), "xhat_");
  const int a2 = count_prefixed(table.header, 1 + std::size_t(m + mh), "a_");
  const int b2 = count_prefixed(
      table.header, 1 + std::size_t(m + mh + a2), "b_");
  const int p = int(std::lround(std::sqrt(double(b2))));
  if (m == 0 || mh != m || a2 != m * m || p * p != b2 ||
      1 + std::size_t(m + mh + a2 + b2) != table.header.size())
    throw ParseError("trivialized curve CSV has an unrecognized column set");

  TrivializedCurve tc;
  for (const auto& row : table.rows) {
    std::size_t at = 0;
    tc.times.push_back(row[at++]);
    VectorXd x(m), xh(m);
    for (int i = 0; i < m; ++i) x(i) = row[at++];
    for (int i = 0; i < m; ++i) xh(i) = row[at++];
    Eigen::MatrixXd a(m, m), b(p, p);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = row[at++];
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) b(i, j) = row[at++];
    tc.x.push_back(std::move(x));
    tc.xhat.push_back(std::move(xh));
    tc.a.push_back(std::move(a));
    tc.b.push_back(std::move(b));
  }
  return tc;
}

}  // namespace pseudoroll
