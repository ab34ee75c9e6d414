#include "nbbl1/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nbbl1::cli {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> header)
    : out_(out), columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

void CsvWriter::separator() {
  if (current_ > 0) out_ << ',';
  ++current_;
}

CsvWriter& CsvWriter::field(const std::string& text) {
  separator();
  if (text.find_first_of(",\"\n") == std::string::npos) {
    out_ << text;
    return *this;
  }
  out_ << '"';
  for (char c : text) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_real(v)); }

CsvWriter& CsvWriter::field(std::size_t v) { return field(std::to_string(v)); }

void CsvWriter::end_row() {
  if (current_ != columns_) {
    throw std::logic_error("CSV row has " + std::to_string(current_) +
                           " fields, header has " + std::to_string(columns_));
  }
  out_ << '\n';
  current_ = 0;
}

void write_trace(std::ostream& out, const std::vector<IterationRecord>& records,
                 bool with_rel_err) {
  std::vector<std::string> header = {"k",          "F",  "norm_d",  "alpha",
                                     "lambda",     "backtracks", "nf",
                                     "elapsed"};
  if (with_rel_err) header.push_back("rel_err");
  CsvWriter csv(out, header);
  for (const auto& r : records) {
    csv.field(r.k).field(r.F).field(r.norm_d).field(r.alpha).field(r.lambda);
    csv.field(r.backtracks).field(r.nf).field(r.elapsed);
    if (with_rel_err) csv.field(r.rel_err.value_or(0.0));
    csv.end_row();
  }
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    row.push_back(std::move(cur));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nbbl1::cli
