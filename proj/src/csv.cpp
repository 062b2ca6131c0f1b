#include "acid/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "acid/errors.hpp"

namespace acid {

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw data_error("CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream head(line);
  std::string cell;
  while (std::getline(head, cell, ',')) table.header.push_back(cell);
  if (table.header.empty()) throw data_error("CSV: empty header");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size())
          throw data_error("trailing characters");
        values.push_back(v);
      } catch (const std::exception&) {
        throw data_error("CSV: non-numeric cell '" + cell + "' at line " +
                         std::to_string(line_no));
      }
    }
    if (values.size() != table.header.size())
      throw data_error("CSV: wrong field count at line " +
                       std::to_string(line_no));
    table.rows.push_back(std::move(values));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open data file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace acid
