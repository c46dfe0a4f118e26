#pragma once

#include "paekit/embedding.hpp"
#include "paekit/pae.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace paekit {

/// Dimension shared by every shipped recipe.
inline constexpr Eigen::Index kFixtureDim = 64;

/// Names accepted by `make_synthetic_fixture`:
/// two_modality_clusters, attribute_trajectory, grouped_attributes, pae_triples.
/// Constructions are documented in docs/fixtures.md and are frozen: changing
/// one changes the expected values in the tests.
std::vector<std::string> fixture_recipes();

/// Deterministic bundle for `recipe` and `seed`. Throws UnknownRecipe.
EmbeddingBundle make_synthetic_fixture(std::string_view recipe, std::uint64_t seed);

/// Triples declared through tags: every image tagged `role:source` names its
/// prompt with `text:<id>` and its ideal target with `target:<id>`.
std::vector<PaeTriple> triples_from_tags(const EmbeddingBundle& bundle);

/// Items carrying `tag`, in bundle order, copied out for the span-based builders.
std::vector<Embedding> select_tagged(const EmbeddingBundle& bundle, std::string_view tag);

}  // namespace paekit
