#include "ngdim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ngdim/errors.hpp"

namespace ngdim {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw IngestionError("cannot open CSV file '" + path + "'");
  std::string line;
  if (!std::getline(file, line) || line.empty())
    throw IngestionError("CSV file '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  CsvTable table;
  table.header = split_line(line);
  const std::size_t cols = table.header.size();
  if (cols == 0) throw IngestionError("CSV header row has no columns");

  std::vector<std::vector<double>> rows;
  int line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != cols)
      throw IngestionError("CSV line " + std::to_string(line_no) + ": found " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(cols));
    std::vector<double> row;
    row.reserve(cols);
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        double v = std::stod(f, &used);
        while (used < f.size() && std::isspace(static_cast<unsigned char>(f[used])))
          ++used;
        if (used != f.size()) throw std::invalid_argument(f);
        row.push_back(v);
      } catch (const std::exception&) {
        throw IngestionError("CSV line " + std::to_string(line_no) +
                             ": non-numeric field '" + f + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw IngestionError("CSV file '" + path + "' has a header but no data");

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return table;
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& values) {
  if (static_cast<Eigen::Index>(header.size()) != values.cols())
    throw ValidationError("write_csv: header/column count mismatch");
  std::ofstream file(path);
  if (!file)
    throw IngestionError("cannot open '" + path + "' for writing");
  for (std::size_t j = 0; j < header.size(); ++j)
    file << (j ? "," : "") << header[j];
  file << "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      file << (j ? "," : "") << format_double(values(i, j));
    file << "\n";
  }
  if (!file)
    throw IngestionError("failed while writing '" + path + "'");
}

}  // namespace ngdim
