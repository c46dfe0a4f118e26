#pragma once

// Internal helpers shared by the JSON readers and writers. Not installed.

#include "paekit/embedding.hpp"
#include "paekit/error.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace paekit::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

inline Json parse_json(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string(source) + ": " + e.what());
  }
}

inline const Json& require_field(const Json& obj, const char* key, std::string_view context) {
  if (!obj.is_object()) fail(ErrorCode::SchemaError, std::string(context) + " is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(ErrorCode::SchemaError, std::string(context) + ": missing field '" + key + "'");
  }
  return *it;
}

inline Vector vector_from_json(const Json& arr, std::string_view context) {
  if (!arr.is_array()) fail(ErrorCode::SchemaError, std::string(context) + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(ErrorCode::SchemaError, std::string(context) + ": non-numeric component");
    v(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
  }
  return v;
}

inline OrderedJson vector_to_json(const Vector& v) {
  auto arr = OrderedJson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

template <class J>
std::string dump(const J& j) {
  return j.dump() + "\n";
}

}  // namespace paekit::detail
