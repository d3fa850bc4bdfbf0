// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "efm/io.hpp"

#include <cstdio>
#include <fstream>

#include "efm/common.hpp"

namespace efm {

std::string format_sci(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.14e", value);
  return buffer;
}

struct CsvWriter::Impl {
  std::ofstream out;
  std::size_t columns = 0;
};

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : impl_(new Impl) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  impl_->out.open(path, std::ios::trunc);
  if (!impl_->out) {
    delete impl_;
    throw IoError("CsvWriter: cannot open " + path.string());
  }
  impl_->columns = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    impl_->out << header[i] << (i + 1 < header.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  detail::require(cells.size() == impl_->columns, "CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace efm
