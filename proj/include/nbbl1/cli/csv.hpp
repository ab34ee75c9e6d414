#pragma once

#include "nbbl1/core_model.hpp"

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace nbbl1::cli {

/// Scientific notation with 16 significant digits, e.g. 1.000000000000000e+00.
std::string format_real(double v);

/// Minimal RFC-4180 style writer: comma separated, '\n' terminated, fields
/// quoted only when they contain a comma, quote or newline.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header);

  CsvWriter& field(const std::string& text);
  CsvWriter& field(double v);
  CsvWriter& field(std::size_t v);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

/// k,F,norm_d,alpha,lambda,backtracks,nf,elapsed[,rel_err]
void write_trace(std::ostream& out, const std::vector<IterationRecord>& records,
                 bool with_rel_err);

/// Parses a CSV produced by CsvWriter (no embedded newlines).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace nbbl1::cli
