#include "support.hpp"

#include <paekit/fixtures.hpp>

#include <gtest/gtest.h>

using namespace paekit;
using testing_support::error_of;

TEST(Fixtures, DeterministicPerSeed) {
  for (const auto& recipe : fixture_recipes()) {
    const auto a = make_synthetic_fixture(recipe, 7);
    const auto b = make_synthetic_fixture(recipe, 7);
    EXPECT_EQ(serialize_bundle(a), serialize_bundle(b)) << recipe;
    const auto c = make_synthetic_fixture(recipe, 8);
    EXPECT_NE(serialize_bundle(a), serialize_bundle(c)) << recipe;
    EXPECT_EQ(a.dim, kFixtureDim);
    for (const auto& item : a.items) EXPECT_NEAR(item.vector.norm(), 1.0, 1e-12) << item.id;
  }
}

TEST(Fixtures, UnknownRecipe) {
  EXPECT_EQ(error_of([] { make_synthetic_fixture("three_body", 1); }), ErrorCode::UnknownRecipe);
}

TEST(Fixtures, RecipeShapes) {
  const auto clusters = make_synthetic_fixture("two_modality_clusters", 1);
  EXPECT_EQ(clusters.items.size(), 40u);
  EXPECT_EQ(clusters.with_tag("modality:image").size(), 20u);
  EXPECT_EQ(clusters.with_tag("topic:dog").size(), 10u);

  const auto traj = make_synthetic_fixture("attribute_trajectory", 1);
  EXPECT_EQ(traj.with_tag("role:frame").size(), 12u);
  EXPECT_EQ(traj.with_tag("space:emotion").size(), 4u);
  EXPECT_EQ(traj.with_tag("space:hair").size(), 3u);
  EXPECT_EQ(traj.with_tag("role:reference").size(), 1u);

  const auto grouped = make_synthetic_fixture("grouped_attributes", 1);
  EXPECT_EQ(grouped.with_tag("role:item").size(), 12u);
  EXPECT_EQ(grouped.with_tag("role:prompt").size(), 3u);
  EXPECT_EQ(grouped.with_tag("role:image").size(), 3u);

  const auto triples = make_synthetic_fixture("pae_triples", 1);
  EXPECT_EQ(triples.with_tag("role:prompt").size(), 6u);
  EXPECT_EQ(triples.with_tag("role:text").size(), 6u);
  EXPECT_EQ(triples.with_tag("role:corpus").size(), 24u);
  EXPECT_EQ(triples.with_tag("role:neutral").size(), 1u);
  EXPECT_EQ(triples_from_tags(triples).size(), 8u);
}

TEST(Fixtures, TriplesResolveToImageTextImage) {
  const auto b = make_synthetic_fixture("pae_triples", 2);
  for (const auto& t : triples_from_tags(b)) {
    EXPECT_EQ(t.image.kind, Modality::Image);
    EXPECT_EQ(t.text.kind, Modality::Text);
    EXPECT_EQ(t.target.kind, Modality::Image);
    EXPECT_EQ(t.image.tag_value("triple"), t.target.tag_value("triple"));
    // The target shares the text's emotion.
    EXPECT_EQ(t.target.label.substr(t.target.label.rfind(' ') + 1), *t.text.tag_value("emotion"));
  }
}

TEST(Fixtures, TriplesFromTagsNeedsBothTags) {
  EmbeddingBundle b;
  b.dim = 1;
  b.items.push_back({"src", Modality::Image, "", {"role:source", "text:t"}, testing_support::vec({1})});
  EXPECT_EQ(error_of([&] { triples_from_tags(b); }), ErrorCode::MissingTag);
  b.items[0].tags.push_back("target:gone");
  b.items.push_back({"t", Modality::Text, "", {}, testing_support::vec({1})});
  EXPECT_EQ(error_of([&] { triples_from_tags(b); }), ErrorCode::NotFound);
}

// Pins the frozen recipes: a change here means every fixture-derived value moved.
TEST(Fixtures, FrozenValues) {
  const auto b = make_synthetic_fixture("pae_triples", 1);
  EXPECT_EQ(b.items.front().id, "prompt_happy");
  EXPECT_EQ(b.items.size(), 6u + 6u + 1u + 24u + 16u);
  const auto c = make_synthetic_fixture("two_modality_clusters", 7);
  EXPECT_EQ(c.items.front().id, "img_dog_00");
  EXPECT_EQ(c.items[5].id, "txt_dog_00");
}

TEST(Fixtures, FrozenCoordinates) {
  struct Pin {
    const char* recipe;
    const char* last_id;
    double first0, first63, last5;
  };
  const Pin pins[] = {
      {"two_modality_clusters", "txt_tree_04", -0.018538878615799916, 0.1817479355191659, 0.028906068616522302},
      {"attribute_trajectory", "text_happy_face", 0.1693482856355514, 0.24961425701373838, -0.053419409220859568},
      {"grouped_attributes", "img_surprise", 0.13721052396054995, 0.22507371725351649, 0.017433061379221963},
      {"pae_triples", "face_07_fearful_target", 0.20102639520715235, 0.048876926924918435, 0.053760057124409448},
  };
  for (const auto& pin : pins) {
    const auto b = make_synthetic_fixture(pin.recipe, 1);
    EXPECT_EQ(b.items.back().id, pin.last_id);
    EXPECT_NEAR(b.items.front().vector(0), pin.first0, 1e-12) << pin.recipe;
    EXPECT_NEAR(b.items.front().vector(63), pin.first63, 1e-12) << pin.recipe;
    EXPECT_NEAR(b.items.back().vector(5), pin.last5, 1e-12) << pin.recipe;
  }
}
