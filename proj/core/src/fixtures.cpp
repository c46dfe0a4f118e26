#include "paekit/fixtures.hpp"

#include "paekit/error.hpp"
#include "paekit/rng.hpp"

#include <Eigen/QR>

#include <array>
#include <cmath>

namespace paekit {

namespace {

constexpr Eigen::Index kDim = kFixtureDim;

/// Random orthonormal frame: Q factor of a Gaussian matrix, columns sign-fixed
/// so that R has a positive diagonal.
Matrix random_frame(Rng& rng) {
  Matrix gaussian(kDim, kDim);
  for (Eigen::Index j = 0; j < kDim; ++j) {
    for (Eigen::Index i = 0; i < kDim; ++i) gaussian(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < kDim; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Vector noise(Rng& rng, double scale) {
  return scale * rng.normal_vector(kDim) / std::sqrt(static_cast<double>(kDim));
}

Embedding make_item(std::string id, Modality kind, std::string label, std::vector<std::string> tags, Vector v) {
  return Embedding{std::move(id), kind, std::move(label), std::move(tags), std::move(v)};
}

std::string pad(int i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

// Image and text regions offset by orthogonal modality directions, sharing
// four topic directions.
EmbeddingBundle two_modality_clusters(Rng& rng) {
  const Matrix q = random_frame(rng);
  const Vector image_offset = q.col(0);
  const Vector text_offset = q.col(1);
  const std::array<const char*, 4> topics{"dog", "cat", "car", "tree"};

  EmbeddingBundle b;
  b.dim = kDim;
  for (std::size_t k = 0; k < topics.size(); ++k) {
    const Vector topic = q.col(2 + static_cast<Eigen::Index>(k));
    const std::string name = topics[k];
    for (int i = 0; i < 5; ++i) {
      b.items.push_back(make_item("img_" + name + "_" + pad(i), Modality::Image, name + " image " + std::to_string(i),
                                  {"modality:image", "topic:" + name},
                                  (image_offset + 0.8 * topic + noise(rng, 0.4)).normalized()));
    }
    for (int i = 0; i < 5; ++i) {
      b.items.push_back(make_item("txt_" + name + "_" + pad(i), Modality::Text, name,
                                  {"modality:text", "topic:" + name},
                                  (text_offset + 0.8 * topic + noise(rng, 0.4)).normalized()));
    }
  }
  return b;
}

Matrix mixing(Rng& rng, Eigen::Index n) {
  Matrix m = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) += rng.uniform(-0.3, 0.3);
  }
  return m;
}

// Frames f_t = normalize(a + 0.15 t v) with v inside the emotion span and a
// mostly outside it; a text reference aligned with v.
EmbeddingBundle attribute_trajectory(Rng& rng) {
  const Matrix q = random_frame(rng);
  EmbeddingBundle b;
  b.dim = kDim;

  const std::array<const char*, 4> emotions{"happy", "sad", "angry", "surprised"};
  const Matrix emotion_mix = mixing(rng, 4);
  for (Eigen::Index k = 0; k < 4; ++k) {
    Vector p = q.leftCols(4) * emotion_mix.row(k).transpose();
    b.items.push_back(make_item("prompt_" + std::string(emotions[static_cast<std::size_t>(k)]), Modality::Text,
                                emotions[static_cast<std::size_t>(k)], {"role:prompt", "space:emotion"}, p.normalized()));
  }
  const std::array<const char*, 3> hair{"curly", "straight", "bald"};
  const Matrix hair_mix = mixing(rng, 3);
  for (Eigen::Index k = 0; k < 3; ++k) {
    Vector p = q.middleCols(10, 3) * hair_mix.row(k).transpose();
    b.items.push_back(make_item("prompt_" + std::string(hair[static_cast<std::size_t>(k)]), Modality::Text,
                                hair[static_cast<std::size_t>(k)], {"role:prompt", "space:hair"}, p.normalized()));
  }

  const Vector v = (q.col(0) + 0.5 * q.col(1)).normalized();
  const Vector a = 3.0 * q.col(8) + q.col(9) + 0.3 * q.col(2) + 0.3 * q.col(10);
  for (int t = 0; t < 12; ++t) {
    b.items.push_back(make_item("frame_" + pad(t), Modality::Image, "frame " + std::to_string(t),
                                {"role:frame", "frame:" + std::to_string(t)}, (a + 0.15 * t * v).normalized()));
  }
  b.items.push_back(make_item("text_happy_face", Modality::Text, "a happy face", {"role:reference"},
                              (v + 0.8 * q.col(5)).normalized()));
  return b;
}

// Three attribute groups sharing a common direction outside the group span.
EmbeddingBundle grouped_attributes(Rng& rng) {
  const Matrix q = random_frame(rng);
  EmbeddingBundle b;
  b.dim = kDim;
  const std::array<const char*, 3> groups{"joy", "anger", "surprise"};
  const Vector common = q.col(3);

  for (Eigen::Index g = 0; g < 3; ++g) {
    const std::string name = groups[static_cast<std::size_t>(g)];
    Vector p = q.col(g) + 0.2 * q.col((g + 1) % 3);
    b.items.push_back(make_item("prompt_" + name, Modality::Text, name, {"role:prompt", "group:" + name}, p.normalized()));
  }
  int j = 0;
  for (Eigen::Index g = 0; g < 3; ++g) {
    const std::string name = groups[static_cast<std::size_t>(g)];
    for (int i = 0; i < 4; ++i, ++j) {
      const Vector in_span = q.leftCols(3) * rng.normal_vector(3) / std::sqrt(3.0);
      Vector x = 0.6 * q.col(g) + common + 0.6 * q.col(4 + j) + 0.15 * in_span;
      b.items.push_back(make_item("text_" + name + "_" + std::to_string(i), Modality::Text,
                                  name + " " + std::to_string(i), {"role:item", "group:" + name}, x.normalized()));
    }
  }
  for (Eigen::Index g = 0; g < 3; ++g) {
    const std::string name = groups[static_cast<std::size_t>(g)];
    Vector x = q.col(16) + 0.8 * q.col(17 + g) + 0.5 * q.col(g);
    b.items.push_back(make_item("img_" + name, Modality::Image, name + " face", {"role:image", "group:" + name},
                                x.normalized()));
  }
  return b;
}

// Six emotion prompts in a text region, face images in an image region carrying
// identity plus a weaker emotion component; triples swap the emotion.
EmbeddingBundle pae_triples(Rng& rng) {
  const Matrix q = random_frame(rng);
  EmbeddingBundle b;
  b.dim = kDim;
  const std::array<const char*, 6> emotions{"happy", "sad", "angry", "fearful", "surprised", "disgusted"};
  const Vector text_offset = q.col(6);
  const Vector image_offset = q.col(7);
  constexpr double kEmotionInImage = 0.5;

  for (Eigen::Index k = 0; k < 6; ++k) {
    const std::string name = emotions[static_cast<std::size_t>(k)];
    b.items.push_back(make_item("prompt_" + name, Modality::Text, name, {"role:prompt", "emotion:" + name},
                                (0.8 * text_offset + q.col(k)).normalized()));
  }
  // Edit prompts share a template direction that the bare-word basis lacks.
  const Vector template_dir = q.col(21);
  for (Eigen::Index k = 0; k < 6; ++k) {
    const std::string name = emotions[static_cast<std::size_t>(k)];
    b.items.push_back(make_item("text_" + name, Modality::Text, "a " + name + " face", {"role:text", "emotion:" + name},
                                (0.8 * text_offset + q.col(k) + 0.4 * template_dir).normalized()));
  }
  b.items.push_back(make_item("prompt_neutral", Modality::Text, "a face", {"role:neutral"},
                              (text_offset + 0.4 * template_dir + 0.2 * q.col(20)).normalized()));
  for (Eigen::Index k = 0; k < 6; ++k) {
    const std::string name = emotions[static_cast<std::size_t>(k)];
    for (int i = 0; i < 4; ++i) {
      const Vector in_span = q.leftCols(6) * rng.normal_vector(6) / std::sqrt(6.0);
      b.items.push_back(make_item("corpus_" + name + "_" + std::to_string(i), Modality::Text,
                                  "a " + name + " face " + std::to_string(i), {"role:corpus", "emotion:" + name},
                                  (0.8 * text_offset + q.col(k) + 0.3 * in_span + noise(rng, 0.1)).normalized()));
    }
  }
  for (int j = 0; j < 8; ++j) {
    const int source = j % 6;
    const int target = (source + 1 + j / 6) % 6;
    const Vector identity = q.col(8 + j);
    const std::string src_name = emotions[static_cast<std::size_t>(source)];
    const std::string tgt_name = emotions[static_cast<std::size_t>(target)];
    const std::string src_id = "face_" + pad(j) + "_" + src_name;
    const std::string tgt_id = "face_" + pad(j) + "_" + tgt_name + "_target";
    Vector src = image_offset + 0.9 * identity + kEmotionInImage * q.col(source) + noise(rng, 0.05);
    Vector tgt = image_offset + 0.9 * identity + kEmotionInImage * q.col(target) + noise(rng, 0.05);
    b.items.push_back(make_item(src_id, Modality::Image, "face " + std::to_string(j) + " " + src_name,
                                {"role:source", "triple:" + std::to_string(j), "text:text_" + tgt_name,
                                 "target:" + tgt_id},
                                src.normalized()));
    b.items.push_back(make_item(tgt_id, Modality::Image, "face " + std::to_string(j) + " " + tgt_name,
                                {"role:target", "triple:" + std::to_string(j)}, tgt.normalized()));
  }
  return b;
}

}  // namespace

std::vector<std::string> fixture_recipes() {
  return {"two_modality_clusters", "attribute_trajectory", "grouped_attributes", "pae_triples"};
}

EmbeddingBundle make_synthetic_fixture(std::string_view recipe, std::uint64_t seed) {
  Rng rng(seed);
  EmbeddingBundle b;
  if (recipe == "two_modality_clusters") {
    b = two_modality_clusters(rng);
  } else if (recipe == "attribute_trajectory") {
    b = attribute_trajectory(rng);
  } else if (recipe == "grouped_attributes") {
    b = grouped_attributes(rng);
  } else if (recipe == "pae_triples") {
    b = pae_triples(rng);
  } else {
    fail(ErrorCode::UnknownRecipe, "unknown fixture recipe '" + std::string(recipe) + "'");
  }
  b.validate();
  return b;
}

std::vector<PaeTriple> triples_from_tags(const EmbeddingBundle& bundle) {
  std::vector<PaeTriple> out;
  for (const auto& item : bundle.items) {
    if (!item.has_tag("role:source")) continue;
    const auto text = item.tag_value("text");
    const auto target = item.tag_value("target");
    if (!text || !target) {
      fail(ErrorCode::MissingTag, "source '" + item.id + "' needs text:<id> and target:<id> tags");
    }
    out.push_back({item, bundle.at(*text), bundle.at(*target)});
  }
  return out;
}

std::vector<Embedding> select_tagged(const EmbeddingBundle& bundle, std::string_view tag) {
  std::vector<Embedding> out;
  for (const auto& item : bundle.items) {
    if (item.has_tag(tag)) out.push_back(item);
  }
  return out;
}

}  // namespace paekit
