// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace efm {

/// Scientific notation with 15 significant digits ('.' decimal separator,
/// locale independent). Used for every CSV number so files round-trip.
std::string format_sci(double value);

/// Minimal CSV writer: UTF-8, one header row, rows of preformatted cells.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace efm
