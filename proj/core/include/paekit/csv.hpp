#pragma once

#include <string>
#include <string_view>

namespace paekit::csv {

/// Locale-independent, 12 significant digits; NaN prints as "nan".
std::string real(double value);
std::string boolean(bool value);
/// Quotes a field when it contains a comma, quote or newline.
std::string field(std::string_view text);

}  // namespace paekit::csv
