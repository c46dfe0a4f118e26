#pragma once

#include "paekit/embedding.hpp"
#include "paekit/subspace.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paekit {

/// Group-averaged cosine similarities. Groups come from `key:value` tags.
struct SimilarityMatrix {
  std::vector<std::string> row_groups;
  std::vector<std::string> col_groups;
  Matrix values;                    // NaN where a cell has no pairs
  std::vector<std::size_t> counts;  // row-major, pairs per cell

  std::size_t count(std::size_t row, std::size_t col) const { return counts[row * col_groups.size() + col]; }
};

/// Cell (G, H) is the mean cosine over all pairs (x in G, y in H), excluding
/// self-pairs when G == H. Groups are sorted by name unless `groups` is given,
/// in which case only those groups are used (EmptyGroup if one has no items).
/// Every item must carry the `group_key` tag (MissingTag otherwise).
SimilarityMatrix similarity_matrix(const EmbeddingBundle& bundle, std::string_view group_key,
                                   std::span<const std::string> groups = {});

struct PcaPoint {
  std::string id;
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

struct Pca2d {
  std::vector<PcaPoint> points;
  double variance_x = 0.0;
  double variance_y = 0.0;
};

/// Coordinates on the top two principal components of the pooled, mean-centered items.
Pca2d pca2d(std::span<const Embedding> items);

struct TrajectorySeries {
  bool in_subspace = false;
  bool text_reference = false;
  std::vector<double> values;
};

/// Cosine of every frame with the reference (frame 0, or `reference_text` when
/// given), after projecting both onto `subspace` when one is supplied.
TrajectorySeries trajectory_similarity(std::span<const Vector> frames,
                                       const std::optional<Vector>& reference_text = std::nullopt,
                                       const CorpusSubspace* subspace = nullptr);

/// Item-level cosine matrix with items ordered by group.
struct ItemSimilarity {
  std::vector<std::string> ids;
  std::vector<std::string> groups;
  Matrix values;

  double mean_within_block() const;  // off-diagonal pairs sharing a group
  double mean_off_block() const;
  double block_contrast() const { return mean_within_block() - mean_off_block(); }
};

ItemSimilarity group_heatmap(const EmbeddingBundle& bundle, std::string_view group_key,
                             std::span<const std::string> groups = {}, const CorpusSubspace* subspace = nullptr);

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out);
void write_pca2d_csv(const Pca2d& p, std::ostream& out);
void write_trajectory_csv(const TrajectorySeries& s, std::ostream& out);
void write_heatmap_csv(const ItemSimilarity& h, std::ostream& out);

}  // namespace paekit
