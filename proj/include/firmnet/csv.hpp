#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace firmnet::csv {

// Split one comma-delimited line. Ids are never quoted (see file formats),
// so a plain split is the whole grammar.
std::vector<std::string_view> split(std::string_view line);

// Stream a CSV file row by row. `header` is matched against the first line
// verbatim; a mismatch throws ParseError. The callback receives the 1-based
// line number and the split fields.
void for_each_row(const std::string& path, std::string_view header,
                  const std::function<void(size_t, const std::vector<std::string_view>&)>& fn);

// Shortest round-trip decimal text for a double (deterministic output files).
std::string format_double(double v);

class Writer {
 public:
  Writer(const std::string& path, std::string_view header);
  void raw_row(std::string_view row);
  std::ostream& stream() { return out_; }

 private:
  std::ofstream out_;
};

bool parse_int(std::string_view s, long& out);
bool parse_double(std::string_view s, double& out);

}  // namespace firmnet::csv
