#pragma once

#include "nis/types.hpp"

#include <string>
#include <vector>

namespace nis {

/// A parsed numeric CSV: one header row, then an all-numeric body.
struct CsvTable {
  std::vector<std::string> header;
  Mat values;  // rows x columns

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  /// Column index for `name`; throws SchemaError when absent.
  int column(const std::string& name) const;
};

/// Reads a comma-separated file with a header row and numeric cells ('.'
/// decimal separator). Throws SchemaError naming the offending row/column on
/// ragged rows, empty or non-numeric cells; NisError on I/O failure.
CsvTable read_csv(const std::string& path);

/// Writes a table with full round-trip precision. Throws NisError on I/O failure.
void write_csv(const std::string& path, const CsvTable& table);

/// Assembles a Dataset from a table: `response` and `exposure` name those
/// columns, every remaining column becomes a covariate in file order.
Dataset dataset_from_table(const CsvTable& table, const std::string& response,
                           const std::string& exposure);

}  // namespace nis
