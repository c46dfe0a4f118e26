#pragma once

#include "oracles.hpp"

#include <paekit/embedding.hpp>
#include <paekit/error.hpp>
#include <paekit/rng.hpp>
#include <paekit/subspace.hpp>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace testing_support {

using paekit::Embedding;
using paekit::Modality;
using paekit::Vector;

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline oracle::Vec to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

inline Vector from_std(const oracle::Vec& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Embedding text(std::string id, Vector v, std::vector<std::string> tags = {}) {
  return Embedding{id, Modality::Text, id, std::move(tags), std::move(v)};
}

inline Embedding image(std::string id, Vector v, std::vector<std::string> tags = {}) {
  return Embedding{id, Modality::Image, id, std::move(tags), std::move(v)};
}

inline std::vector<Embedding> texts(const std::vector<Vector>& vs, const std::string& prefix = "t") {
  std::vector<Embedding> out;
  for (std::size_t i = 0; i < vs.size(); ++i) out.push_back(text(prefix + std::to_string(i), vs[i]));
  return out;
}

// Random orthonormal subspace of dimension n in R^d, built from random prompts.
inline paekit::CorpusSubspace random_gs(paekit::Rng& rng, Eigen::Index d, Eigen::Index n) {
  std::vector<Vector> vs;
  for (Eigen::Index k = 0; k < n; ++k) vs.push_back(rng.normal_vector(d));
  const auto prompts = texts(vs);
  return paekit::build_gs(prompts);
}

// Runs f and reports the ErrorCode it threw, or nullopt.
template <typename F>
std::optional<paekit::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const paekit::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing_support
