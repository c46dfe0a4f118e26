#include "paekit/embedding.hpp"

#include "paekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace paekit {

std::string_view to_string(Modality kind) noexcept {
  return kind == Modality::Image ? "image" : "text";
}

Modality modality_from_string(std::string_view name) {
  if (name == "image") return Modality::Image;
  if (name == "text") return Modality::Text;
  fail(ErrorCode::SchemaError, "unknown embedding kind '" + std::string(name) + "'");
}

bool Embedding::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::optional<std::string> Embedding::tag_value(std::string_view key) const {
  for (const auto& tag : tags) {
    if (tag.size() > key.size() && tag.compare(0, key.size(), key) == 0 && tag[key.size()] == ':') {
      return tag.substr(key.size() + 1);
    }
  }
  return std::nullopt;
}

void EmbeddingBundle::validate() const {
  if (format_version != kFormatVersion) {
    fail(ErrorCode::VersionError, "unsupported format_version " + std::to_string(format_version));
  }
  if (dim <= 0) fail(ErrorCode::SchemaError, "dim must be positive");
  std::unordered_set<std::string> seen;
  for (const auto& item : items) {
    if (item.id.empty()) fail(ErrorCode::SchemaError, "item with empty id");
    if (!seen.insert(item.id).second) fail(ErrorCode::SchemaError, "duplicate id '" + item.id + "'");
    if (item.vector.size() != dim) {
      fail(ErrorCode::SchemaError, "item '" + item.id + "' has vector length " +
                                       std::to_string(item.vector.size()) + ", expected " +
                                       std::to_string(dim));
    }
    if (!item.vector.allFinite()) {
      fail(ErrorCode::SchemaError, "item '" + item.id + "' has non-finite components");
    }
  }
}

const Embedding* EmbeddingBundle::find(std::string_view id) const {
  auto it = std::find_if(items.begin(), items.end(), [&](const Embedding& e) { return e.id == id; });
  return it == items.end() ? nullptr : &*it;
}

const Embedding& EmbeddingBundle::at(std::string_view id) const {
  if (const auto* e = find(id)) return *e;
  fail(ErrorCode::NotFound, "no item with id '" + std::string(id) + "'");
}

std::vector<const Embedding*> EmbeddingBundle::with_tag(std::string_view tag) const {
  std::vector<const Embedding*> out;
  for (const auto& item : items) {
    if (item.has_tag(tag)) out.push_back(&item);
  }
  return out;
}

Vector normalize(const Vector& v) {
  const double n = v.norm();
  if (!(n >= kZeroNormTolerance)) fail(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  return v / n;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "cosine_similarity");
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na >= kZeroNormTolerance) || !(nb >= kZeroNormTolerance)) {
    fail(ErrorCode::ZeroVector, "cosine similarity of a zero vector");
  }
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

void require_same_dim(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimMismatch, std::string(what) + ": dimensions " + std::to_string(a.size()) +
                                     " and " + std::to_string(b.size()) + " differ");
  }
}

}  // namespace paekit
