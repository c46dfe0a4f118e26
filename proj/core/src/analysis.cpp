#include "paekit/analysis.hpp"

#include "paekit/csv.hpp"
#include "paekit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace paekit {

namespace {

struct Grouped {
  std::vector<std::string> names;
  std::vector<std::vector<const Embedding*>> members;
};

Grouped group_items(const EmbeddingBundle& bundle, std::string_view key, std::span<const std::string> wanted) {
  std::map<std::string, std::vector<const Embedding*>> by_group;
  for (const auto& item : bundle.items) {
    auto group = item.tag_value(key);
    if (!group) fail(ErrorCode::MissingTag, "item '" + item.id + "' has no '" + std::string(key) + ":' tag");
    by_group[*group].push_back(&item);
  }
  Grouped out;
  if (wanted.empty()) {
    for (auto& [name, items] : by_group) {
      out.names.push_back(name);
      out.members.push_back(std::move(items));
    }
    return out;
  }
  for (const auto& name : wanted) {
    auto it = by_group.find(name);
    if (it == by_group.end() || it->second.empty()) {
      fail(ErrorCode::EmptyGroup, "group '" + name + "' has no items");
    }
    out.names.push_back(name);
    out.members.push_back(it->second);
  }
  return out;
}

}  // namespace

SimilarityMatrix similarity_matrix(const EmbeddingBundle& bundle, std::string_view group_key,
                                   std::span<const std::string> groups) {
  const auto grouped = group_items(bundle, group_key, groups);
  const auto g = grouped.names.size();
  if (g == 0) fail(ErrorCode::EmptyGroup, "bundle has no items to group");

  SimilarityMatrix m;
  m.row_groups = grouped.names;
  m.col_groups = grouped.names;
  m.values = Matrix::Constant(static_cast<Eigen::Index>(g), static_cast<Eigen::Index>(g),
                              std::numeric_limits<double>::quiet_NaN());
  m.counts.assign(g * g, 0);
  for (std::size_t r = 0; r < g; ++r) {
    for (std::size_t c = 0; c < g; ++c) {
      double sum = 0.0;
      std::size_t pairs = 0;
      for (const auto* x : grouped.members[r]) {
        for (const auto* y : grouped.members[c]) {
          if (x == y) continue;
          sum += cosine_similarity(x->vector, y->vector);
          ++pairs;
        }
      }
      m.counts[r * g + c] = pairs;
      if (pairs > 0) m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum / static_cast<double>(pairs);
    }
  }
  return m;
}

Pca2d pca2d(std::span<const Embedding> items) {
  if (items.size() < 3) fail(ErrorCode::InvalidArgument, "pca2d needs at least 3 items");
  const auto d = items.front().vector.size();
  if (d < 2) fail(ErrorCode::InvalidArgument, "pca2d needs dimension >= 2");
  Matrix samples(static_cast<Eigen::Index>(items.size()), d);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].vector.size() != d) fail(ErrorCode::DimMismatch, "pca2d: '" + items[i].id + "' dimension");
    samples.row(static_cast<Eigen::Index>(i)) = items[i].vector.transpose();
  }
  const auto pc = principal_components(samples, 2);
  const Matrix coords = (samples.rowwise() - pc.mean.transpose()) * pc.components;

  Pca2d out;
  out.variance_x = pc.variances[0];
  out.variance_y = pc.variances[1];
  out.points.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out.points.push_back({items[i].id, items[i].label, coords(row, 0), coords(row, 1)});
  }
  return out;
}

TrajectorySeries trajectory_similarity(std::span<const Vector> frames, const std::optional<Vector>& reference_text,
                                       const CorpusSubspace* subspace) {
  if (frames.size() < 2) fail(ErrorCode::InvalidArgument, "trajectory needs at least 2 frames");
  auto transform = [&](const Vector& v) -> Vector {
    Vector out = subspace ? project(*subspace, v) : v;
    if (!(out.norm() >= kZeroNormTolerance)) {
      fail(ErrorCode::DegenerateDirection, "trajectory vector vanishes after projection");
    }
    return out;
  };
  for (const auto& f : frames) require_same_dim(frames.front(), f, "trajectory_similarity");

  TrajectorySeries series;
  series.in_subspace = subspace != nullptr;
  series.text_reference = reference_text.has_value();
  const Vector reference = transform(reference_text ? *reference_text : frames.front());
  series.values.reserve(frames.size());
  for (const auto& f : frames) {
    require_same_dim(f, reference, "trajectory_similarity");
    series.values.push_back(cosine_similarity(transform(f), reference));
  }
  return series;
}

ItemSimilarity group_heatmap(const EmbeddingBundle& bundle, std::string_view group_key,
                             std::span<const std::string> groups, const CorpusSubspace* subspace) {
  const auto grouped = group_items(bundle, group_key, groups);
  ItemSimilarity h;
  std::vector<Vector> vectors;
  for (std::size_t g = 0; g < grouped.names.size(); ++g) {
    for (const auto* item : grouped.members[g]) {
      h.ids.push_back(item->id);
      h.groups.push_back(grouped.names[g]);
      Vector v = subspace ? project(*subspace, item->vector) : item->vector;
      if (!(v.norm() >= kZeroNormTolerance)) {
        fail(ErrorCode::DegenerateDirection, "item '" + item->id + "' vanishes after projection");
      }
      vectors.push_back(std::move(v));
    }
  }
  const auto n = static_cast<Eigen::Index>(vectors.size());
  if (n < 2) fail(ErrorCode::InvalidArgument, "heat-map needs at least 2 items");
  h.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h.values(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = cosine_similarity(vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)]);
      h.values(i, j) = c;
      h.values(j, i) = c;
    }
  }
  return h;
}

double ItemSimilarity::mean_within_block() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (i != j && groups[i] == groups[j]) {
        sum += values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        ++count;
      }
    }
  }
  return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

double ItemSimilarity::mean_off_block() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (groups[i] != groups[j]) {
        sum += values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        ++count;
      }
    }
  }
  return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

void write_matrix_csv(const SimilarityMatrix& m, std::ostream& out) {
  out << "row_group,col_group,mean,count\n";
  for (std::size_t r = 0; r < m.row_groups.size(); ++r) {
    for (std::size_t c = 0; c < m.col_groups.size(); ++c) {
      out << csv::field(m.row_groups[r]) << ',' << csv::field(m.col_groups[c]) << ','
          << csv::real(m.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) << ',' << m.count(r, c)
          << '\n';
    }
  }
}

void write_pca2d_csv(const Pca2d& p, std::ostream& out) {
  out << "id,label,x,y\n";
  for (const auto& pt : p.points) {
    out << csv::field(pt.id) << ',' << csv::field(pt.label) << ',' << csv::real(pt.x) << ',' << csv::real(pt.y) << '\n';
  }
}

void write_trajectory_csv(const TrajectorySeries& s, std::ostream& out) {
  out << "frame,cosine\n";
  for (std::size_t t = 0; t < s.values.size(); ++t) out << t << ',' << csv::real(s.values[t]) << '\n';
}

void write_heatmap_csv(const ItemSimilarity& h, std::ostream& out) {
  out << "row_id,col_id,row_group,col_group,cosine\n";
  for (std::size_t i = 0; i < h.ids.size(); ++i) {
    for (std::size_t j = 0; j < h.ids.size(); ++j) {
      out << csv::field(h.ids[i]) << ',' << csv::field(h.ids[j]) << ',' << csv::field(h.groups[i]) << ','
          << csv::field(h.groups[j]) << ',' << csv::real(h.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
          << '\n';
    }
  }
}

}  // namespace paekit
