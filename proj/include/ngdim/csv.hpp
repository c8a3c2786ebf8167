#ifndef NGDIM_CSV_HPP
#define NGDIM_CSV_HPP

#include <string>
#include <vector>

#include "ngdim/types.hpp"

namespace ngdim {

struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};

/// Reads a comma-separated file with one header row and one column per
/// series. Ragged or non-numeric rows raise IngestionError with the
/// offending line number.
CsvTable read_csv(const std::string& path);

/// Writes with enough digits to round-trip doubles exactly, so identical
/// inputs give byte-identical files.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& values);

std::string format_double(double v);

}  // namespace ngdim

#endif
