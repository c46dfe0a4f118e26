#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paekit {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Norm below which a vector is treated as zero by `normalize` and `cosine_similarity`.
inline constexpr double kZeroNormTolerance = 1e-12;

enum class Modality { Image, Text };

std::string_view to_string(Modality kind) noexcept;
Modality modality_from_string(std::string_view name);

/// A labeled point in the joint image/text space. Vectors are stored exactly as
/// produced by the encoder; nothing here normalizes them.
struct Embedding {
  std::string id;
  Modality kind = Modality::Text;
  std::string label;
  std::vector<std::string> tags;
  Vector vector;

  bool has_tag(std::string_view tag) const;
  /// Value of the first `key:value` tag with the given key.
  std::optional<std::string> tag_value(std::string_view key) const;
};

struct EmbeddingBundle {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  Eigen::Index dim = 0;
  std::vector<Embedding> items;

  /// Throws SchemaError on non-positive dim, wrong vector length, non-finite
  /// components or duplicate ids.
  void validate() const;

  const Embedding* find(std::string_view id) const;
  /// Throws NotFound when no item carries `id`.
  const Embedding& at(std::string_view id) const;
  std::vector<const Embedding*> with_tag(std::string_view tag) const;
};

Vector normalize(const Vector& v);

/// Cosine of the angle between `a` and `b`, clamped to [-1, 1].
double cosine_similarity(const Vector& a, const Vector& b);

EmbeddingBundle parse_bundle(std::string_view json_text, std::string_view source = "<memory>");
std::string serialize_bundle(const EmbeddingBundle& bundle);

EmbeddingBundle load_bundle(const std::filesystem::path& path);
void save_bundle(const EmbeddingBundle& bundle, const std::filesystem::path& path);

/// Shared check used by every module that combines two vectors.
void require_same_dim(const Vector& a, const Vector& b, std::string_view what);

}  // namespace paekit
