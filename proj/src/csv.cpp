#include "nis/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nis {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& raw, int row, const std::string& col) {
  const std::string cell = trim(raw);
  if (cell.empty())
    throw SchemaError("empty cell at data row " + std::to_string(row) + ", column '" + col + "'");
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE)
    throw SchemaError("non-numeric cell '" + cell + "' at data row " + std::to_string(row) +
                      ", column '" + col + "'");
  return value;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw SchemaError("column '" + name + "' not found in header");
  return static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "' for reading");

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + path + "': empty file");
  CsvTable table;
  for (const auto& name : split_fields(line)) table.header.push_back(trim(name));
  if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty()))
    throw SchemaError("'" + path + "': empty header row");

  const std::size_t ncol = table.header.size();
  std::vector<double> flat;
  int nrow = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;  // ignore blank trailing lines
    const auto fields = split_fields(line);
    ++nrow;
    if (fields.size() != ncol)
      throw SchemaError("'" + path + "': data row " + std::to_string(nrow) + " has " +
                        std::to_string(fields.size()) + " fields, header has " +
                        std::to_string(ncol));
    for (std::size_t c = 0; c < ncol; ++c)
      flat.push_back(parse_cell(fields[c], nrow, table.header[c]));
  }
  table.values.resize(nrow, static_cast<int>(ncol));
  for (int r = 0; r < nrow; ++r)
    for (int c = 0; c < static_cast<int>(ncol); ++c) table.values(r, c) = flat[r * ncol + c];
  return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path);
  if (!out) throw NisError("cannot open '" + path + "' for writing");
  for (std::size_t c = 0; c < table.header.size(); ++c)
    out << (c ? "," : "") << table.header[c];
  out << '\n';
  char buf[64];
  for (int r = 0; r < table.rows(); ++r) {
    for (int c = 0; c < table.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", table.values(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out.flush()) throw NisError("write to '" + path + "' failed");
}

Dataset dataset_from_table(const CsvTable& table, const std::string& response,
                           const std::string& exposure) {
  const int yc = table.column(response);
  const int wc = table.column(exposure);
  if (yc == wc) throw SchemaError("response and exposure name the same column '" + response + "'");
  if (table.rows() == 0) throw SchemaError("no data rows");
  Dataset data;
  data.y = table.values.col(yc);
  data.w = table.values.col(wc);
  const int p = table.cols() - 2;
  if (p < 1) throw SchemaError("no covariate columns besides response and exposure");
  data.x.resize(table.rows(), p);
  int k = 0;
  for (int c = 0; c < table.cols(); ++c) {
    if (c == yc || c == wc) continue;
    data.x.col(k) = table.values.col(c);
    data.names.push_back(table.header[c]);
    ++k;
  }
  return data;
}

}  // namespace nis
