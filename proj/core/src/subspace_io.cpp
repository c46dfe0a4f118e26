#include "json_util.hpp"

#include "paekit/error.hpp"
#include "paekit/subspace.hpp"

namespace paekit {

using detail::Json;
using detail::OrderedJson;

namespace {

std::string method_of(const Json& doc) {
  const auto& method = detail::require_field(doc, "method", "space");
  if (!method.is_string()) fail(ErrorCode::SchemaError, "method must be a string");
  return method.get<std::string>();
}

Eigen::Index dim_of(const Json& doc) {
  const auto& dim = detail::require_field(doc, "dim", "space");
  if (!dim.is_number_integer() || dim.get<long long>() <= 0) {
    fail(ErrorCode::SchemaError, "dim must be a positive integer");
  }
  return dim.get<Eigen::Index>();
}

CorpusSubspace subspace_from_json(const Json& doc) {
  const auto dim = dim_of(doc);
  const auto method = basis_method_from_string(method_of(doc));

  const auto& rows = detail::require_field(doc, "basis", "subspace");
  if (!rows.is_array() || rows.empty()) fail(ErrorCode::SchemaError, "basis must be a non-empty array");
  Matrix basis(dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    Vector b = detail::vector_from_json(rows[k], "basis[" + std::to_string(k) + "]");
    if (b.size() != dim) fail(ErrorCode::SchemaError, "basis vector length differs from dim");
    basis.col(static_cast<Eigen::Index>(k)) = b;
  }

  if (auto it = doc.find("orthonormal"); it != doc.end()) {
    if (!it->is_boolean()) fail(ErrorCode::SchemaError, "orthonormal must be a boolean");
    if (it->get<bool>() != (method != BasisMethod::Raw)) {
      fail(ErrorCode::SchemaError, "orthonormal flag contradicts method");
    }
  }

  std::vector<std::string> labels;
  if (auto it = doc.find("source_labels"); it != doc.end()) {
    if (!it->is_array()) fail(ErrorCode::SchemaError, "source_labels must be an array");
    for (const auto& l : *it) {
      if (!l.is_string()) fail(ErrorCode::SchemaError, "source_labels entries must be strings");
      labels.push_back(l.get<std::string>());
    }
  }

  std::optional<std::vector<double>> variance;
  if (auto it = doc.find("explained_variance"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) fail(ErrorCode::SchemaError, "explained_variance must be an array");
    std::vector<double> ev;
    for (const auto& x : *it) {
      if (!x.is_number()) fail(ErrorCode::SchemaError, "explained_variance entries must be numbers");
      ev.push_back(x.get<double>());
    }
    if (!ev.empty()) variance = std::move(ev);
  }

  try {
    return CorpusSubspace(std::move(basis), method, std::move(labels), std::move(variance));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::SchemaError, e.what());
    throw;
  }
}

ManifoldSet sample_set_from_json(const Json& doc) {
  const auto dim = dim_of(doc);
  const auto& members = detail::require_field(doc, "members", "sample set");
  if (!members.is_array()) fail(ErrorCode::SchemaError, "members must be an array");
  std::vector<ManifoldMember> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string ctx = "members[" + std::to_string(i) + "]";
    const auto& label = detail::require_field(members[i], "label", ctx);
    if (!label.is_string()) fail(ErrorCode::SchemaError, ctx + ".label must be a string");
    Vector v = detail::vector_from_json(detail::require_field(members[i], "vector", ctx), ctx);
    if (v.size() != dim) fail(ErrorCode::SchemaError, ctx + " length differs from dim");
    out.push_back({label.get<std::string>(), std::move(v)});
  }
  try {
    return ManifoldSet(std::move(out));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::EmptyInput) {
      fail(ErrorCode::SchemaError, e.what());
    }
    throw;
  }
}

}  // namespace

std::string serialize_subspace(const CorpusSubspace& s) {
  OrderedJson doc;
  doc["dim"] = s.dim();
  doc["method"] = std::string(to_string(s.method()));
  doc["orthonormal"] = s.orthonormal();
  auto basis = OrderedJson::array();
  for (Eigen::Index k = 0; k < s.size(); ++k) basis.push_back(detail::vector_to_json(s.basis_vector(k)));
  doc["basis"] = std::move(basis);
  doc["source_labels"] = s.source_labels();
  if (s.explained_variance()) {
    doc["explained_variance"] = *s.explained_variance();
  } else {
    doc["explained_variance"] = OrderedJson::array();
  }
  return detail::dump(doc);
}

CorpusSubspace parse_subspace(std::string_view json_text, std::string_view source) {
  const Json doc = detail::parse_json(json_text, source);
  if (method_of(doc) == "all") fail(ErrorCode::SchemaError, std::string(source) + " holds a sample set, not a subspace");
  return subspace_from_json(doc);
}

void save_subspace(const CorpusSubspace& s, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_subspace(s));
}

CorpusSubspace load_subspace(const std::filesystem::path& path) {
  return parse_subspace(detail::read_text_file(path), path.string());
}

std::string serialize_sample_set(const ManifoldSet& m) {
  OrderedJson doc;
  doc["dim"] = m.dim();
  doc["method"] = "all";
  auto members = OrderedJson::array();
  for (const auto& member : m.members()) {
    OrderedJson item;
    item["label"] = member.label;
    item["vector"] = detail::vector_to_json(member.vector);
    members.push_back(std::move(item));
  }
  doc["members"] = std::move(members);
  return detail::dump(doc);
}

ManifoldSet parse_sample_set(std::string_view json_text, std::string_view source) {
  const Json doc = detail::parse_json(json_text, source);
  if (method_of(doc) != "all") fail(ErrorCode::SchemaError, std::string(source) + " is not a sample set");
  return sample_set_from_json(doc);
}

void save_sample_set(const ManifoldSet& m, const std::filesystem::path& path) {
  detail::write_text_file(path, serialize_sample_set(m));
}

Space load_space(const std::filesystem::path& path) {
  const auto text = detail::read_text_file(path);
  const Json doc = detail::parse_json(text, path.string());
  if (method_of(doc) == "all") return sample_set_from_json(doc);
  return subspace_from_json(doc);
}

void save_space(const Space& space, const std::filesystem::path& path) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CorpusSubspace>) {
          save_subspace(s, path);
        } else {
          save_sample_set(s, path);
        }
      },
      space);
}

}  // namespace paekit
