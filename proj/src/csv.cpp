#include "firmnet/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <system_error>

#include "firmnet/errors.hpp"

namespace firmnet::csv {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void for_each_row(const std::string& path, std::string_view header,
                  const std::function<void(size_t, const std::vector<std::string_view>&)>& fn) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lineno == 1) {
      if (line != header)
        throw ParseError(path, 1, "expected header '" + std::string(header) + "', got '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    fn(lineno, split(line));
  }
  if (lineno == 0) throw ParseError(path, 1, "empty file, expected header '" + std::string(header) + "'");
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Writer::Writer(const std::string& path, std::string_view header) : out_(path) {
  if (!out_) throw DataError("cannot open file for writing: " + path);
  out_ << header << '\n';
}

void Writer::raw_row(std::string_view row) { out_ << row << '\n'; }

bool parse_int(std::string_view s, long& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

}  // namespace firmnet::csv
