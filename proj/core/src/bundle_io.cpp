#include "json_util.hpp"

#include "paekit/embedding.hpp"
#include "paekit/error.hpp"

namespace paekit {

using detail::Json;
using detail::OrderedJson;

namespace {

Embedding item_from_json(const Json& obj, std::size_t index) {
  const std::string ctx = "items[" + std::to_string(index) + "]";
  Embedding e;
  const auto& id = detail::require_field(obj, "id", ctx);
  if (!id.is_string()) fail(ErrorCode::SchemaError, ctx + ".id must be a string");
  e.id = id.get<std::string>();

  const auto& kind = detail::require_field(obj, "kind", ctx);
  if (!kind.is_string()) fail(ErrorCode::SchemaError, ctx + ".kind must be a string");
  e.kind = modality_from_string(kind.get<std::string>());

  const auto& label = detail::require_field(obj, "label", ctx);
  if (!label.is_string()) fail(ErrorCode::SchemaError, ctx + ".label must be a string");
  e.label = label.get<std::string>();

  if (auto it = obj.find("tags"); it != obj.end()) {
    if (!it->is_array()) fail(ErrorCode::SchemaError, ctx + ".tags must be an array");
    for (const auto& t : *it) {
      if (!t.is_string()) fail(ErrorCode::SchemaError, ctx + ".tags entries must be strings");
      e.tags.push_back(t.get<std::string>());
    }
  }
  e.vector = detail::vector_from_json(detail::require_field(obj, "vector", ctx), ctx + ".vector");
  return e;
}

}  // namespace

EmbeddingBundle parse_bundle(std::string_view json_text, std::string_view source) {
  const Json doc = detail::parse_json(json_text, source);
  if (!doc.is_object()) fail(ErrorCode::SchemaError, "bundle root must be an object");

  const auto& version = detail::require_field(doc, "format_version", "bundle");
  if (!version.is_number_integer()) fail(ErrorCode::SchemaError, "format_version must be an integer");
  EmbeddingBundle bundle;
  bundle.format_version = version.get<int>();
  if (bundle.format_version != EmbeddingBundle::kFormatVersion) {
    fail(ErrorCode::VersionError, std::string(source) + ": unsupported format_version " +
                                      std::to_string(bundle.format_version));
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "format_version" && key != "dim" && key != "items") {
      fail(ErrorCode::SchemaError, std::string(source) + ": unknown top-level key '" + key + "'");
    }
  }

  const auto& dim = detail::require_field(doc, "dim", "bundle");
  if (!dim.is_number_integer()) fail(ErrorCode::SchemaError, "dim must be an integer");
  bundle.dim = dim.get<Eigen::Index>();

  const auto& items = detail::require_field(doc, "items", "bundle");
  if (!items.is_array()) fail(ErrorCode::SchemaError, "items must be an array");
  bundle.items.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) bundle.items.push_back(item_from_json(items[i], i));

  bundle.validate();
  return bundle;
}

std::string serialize_bundle(const EmbeddingBundle& bundle) {
  bundle.validate();
  OrderedJson doc;
  doc["format_version"] = bundle.format_version;
  doc["dim"] = bundle.dim;
  auto items = OrderedJson::array();
  for (const auto& e : bundle.items) {
    OrderedJson item;
    item["id"] = e.id;
    item["kind"] = std::string(to_string(e.kind));
    item["label"] = e.label;
    item["tags"] = e.tags;
    item["vector"] = detail::vector_to_json(e.vector);
    items.push_back(std::move(item));
  }
  doc["items"] = std::move(items);
  return detail::dump(doc);
}

EmbeddingBundle load_bundle(const std::filesystem::path& path) {
  return parse_bundle(detail::read_text_file(path), path.string());
}

void save_bundle(const EmbeddingBundle& bundle, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_bundle(bundle));
}

}  // namespace paekit
