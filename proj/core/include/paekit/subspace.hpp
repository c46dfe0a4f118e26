#pragma once

#include "paekit/embedding.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paekit {

/// Residual norm (relative to a unit-normalized prompt) below which Gram-Schmidt
/// reports DegenerateBasis instead of emitting a basis vector.
inline constexpr double kGramSchmidtTolerance = 1e-6;
inline constexpr double kOrthonormalTolerance = 1e-6;

enum class BasisMethod { GramSchmidt, Raw, Pca };

std::string_view to_string(BasisMethod method) noexcept;
BasisMethod basis_method_from_string(std::string_view name);

/// Linear subspace of the joint space, stored as D x N basis columns.
///
/// Gram-Schmidt and PCA bases are orthonormal. Raw bases are unit-norm prompt
/// directions with no orthogonalization, so `project` on them is the plain
/// sum of dot-product weighted basis vectors and is not idempotent.
class CorpusSubspace {
 public:
  /// Validates 1 <= N <= D, orthonormality for GramSchmidt/Pca, and a
  /// non-increasing explained variance of length N when one is supplied.
  CorpusSubspace(Matrix basis, BasisMethod method, std::vector<std::string> source_labels,
                 std::optional<std::vector<double>> explained_variance = std::nullopt);

  Eigen::Index dim() const noexcept { return basis_.rows(); }
  Eigen::Index size() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }
  auto basis_vector(Eigen::Index k) const { return basis_.col(k); }
  BasisMethod method() const noexcept { return method_; }
  bool orthonormal() const noexcept { return method_ != BasisMethod::Raw; }
  const std::vector<std::string>& source_labels() const noexcept { return source_labels_; }
  const std::optional<std::vector<double>>& explained_variance() const noexcept {
    return explained_variance_;
  }

 private:
  Matrix basis_;
  BasisMethod method_;
  std::vector<std::string> source_labels_;
  std::optional<std::vector<double>> explained_variance_;
};

struct ManifoldMember {
  std::string label;
  Vector vector;
};

/// Sampled points of a (possibly non-linear) attribute manifold. Members are unit vectors.
class ManifoldSet {
 public:
  explicit ManifoldSet(std::vector<ManifoldMember> members);

  Eigen::Index dim() const noexcept { return members_.front().vector.size(); }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<ManifoldMember>& members() const noexcept { return members_; }

 private:
  std::vector<ManifoldMember> members_;
};

struct ManifoldMatch {
  std::size_t index = 0;
  std::string label;
  Vector vector;
};

CorpusSubspace build_gs(std::span<const Embedding> prompts);
CorpusSubspace build_raw(std::span<const Embedding> prompts);
CorpusSubspace build_pca(std::span<const Embedding> corpus, Eigen::Index n_components);
ManifoldSet build_sample_set(std::span<const Embedding> corpus);

/// Sum over basis vectors of <b_k, v> b_k.
Vector project(const CorpusSubspace& s, const Vector& v);
/// k-th entry is <v, b_k>.
Vector coefficients(const CorpusSubspace& s, const Vector& v);
/// Euclidean distance from `v` to span(basis), valid for raw bases too.
double distance_to_span(const CorpusSubspace& s, const Vector& v);

/// Member with maximum cosine similarity to `v`; ties go to the earliest member.
ManifoldMatch project_all(const ManifoldSet& m, const Vector& v);
/// Member indices ordered by descending cosine similarity to `v` (stable on ties).
std::vector<std::size_t> rank_members(const ManifoldSet& m, const Vector& v);

/// Mean-centered principal components of the rows of `samples` (n x D).
struct PrincipalComponents {
  Vector mean;
  Matrix components;             // D x N, orthonormal columns
  std::vector<double> variances; // non-increasing, sample variance (n - 1 divisor)
};

enum class PcaRoute { Auto, Covariance, Gram };

/// Throws RankDeficient when fewer than `n_components` directions carry variance.
/// Each component is sign-fixed so that its largest-magnitude coordinate is positive.
PrincipalComponents principal_components(const Matrix& samples, Eigen::Index n_components,
                                         PcaRoute route = PcaRoute::Auto);

// JSON persistence. Subspace files carry "method" in {gram_schmidt, raw, pca};
// sample-set files use "method": "all" with a "members" array.
std::string serialize_subspace(const CorpusSubspace& s);
CorpusSubspace parse_subspace(std::string_view json_text, std::string_view source = "<memory>");
void save_subspace(const CorpusSubspace& s, const std::filesystem::path& path);
CorpusSubspace load_subspace(const std::filesystem::path& path);

std::string serialize_sample_set(const ManifoldSet& m);
ManifoldSet parse_sample_set(std::string_view json_text, std::string_view source = "<memory>");
void save_sample_set(const ManifoldSet& m, const std::filesystem::path& path);

using Space = std::variant<CorpusSubspace, ManifoldSet>;
/// Loads either file flavor, dispatching on "method".
Space load_space(const std::filesystem::path& path);
void save_space(const Space& space, const std::filesystem::path& path);

}  // namespace paekit
