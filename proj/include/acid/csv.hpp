#pragma once

#include <string>
#include <vector>

namespace acid {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 when absent
};

//! Strict numeric CSV: comma separator, '.' decimal, mandatory header,
//! no quoting. Parse problems raise data_error.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace acid
