// Small CSV writer: UTF-8, comma separated, one header row, numeric cells in
// full round-trip precision so reruns are byte-identical.
#ifndef OBP_CSV_HPP
#define OBP_CSV_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "obp/errors.hpp"

namespace obp {

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : out_(path), columns_(header.size()) {
    if (!out_) throw InvalidArgument("cannot open CSV output: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out_ << ',';
      out_ << header[i];
    }
    out_ << '\n';
  }

  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
      throw InvalidArgument("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace obp

#endif
