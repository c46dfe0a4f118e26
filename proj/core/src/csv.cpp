#include "paekit/csv.hpp"

#include <cmath>
#include <cstdio>

namespace paekit::csv {

std::string real(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string boolean(bool value) { return value ? "true" : "false"; }

std::string field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace paekit::csv
