#ifndef SGI_CSV_HPP
#define SGI_CSV_HPP

#include <ostream>
#include <string>
#include <variant>
#include <vector>

// CSV output: RFC 4180 quoting, doubles at 17 significant digits, '#'
// provenance preamble before the header row. The generation timestamp is the
// only line allowed to differ between identical runs.

namespace sgi {

using CsvValue = std::variant<double, long, std::string>;

std::string csv_format(const CsvValue& v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);  // "# text"
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<CsvValue>& values);

 private:
  std::ostream& out_;
};

}  // namespace sgi

#endif
