#include "sgi/csv.hpp"

#include <cstdio>

namespace sgi {

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_format(const CsvValue& v) {
  if (std::holds_alternative<double>(v)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(v));
    return buf;
  }
  if (std::holds_alternative<long>(v)) return std::to_string(std::get<long>(v));
  return quote_if_needed(std::get<std::string>(v));
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << quote_if_needed(columns[i]);
  out_ << "\n";
}

void CsvWriter::row(const std::vector<CsvValue>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << csv_format(values[i]);
  out_ << "\n";
}

}  // namespace sgi
