#include "scenarios.hpp"
#include "support.hpp"

#include <paekit/fixtures.hpp>
#include <paekit/pae.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <sstream>

using namespace paekit;
using testing_support::image;
using testing_support::text;
using testing_support::texts;
using testing_support::vec;

namespace {

std::shared_ptr<const Space> xy_plane() {
  return std::make_shared<const Space>(build_gs(texts({vec({1, 0, 0}), vec({0, 1, 0})})));
}

std::vector<PaeTriple> r3_triple() {
  return {{image("i", vec({0.6, 0, 0.8})), text("t", vec({0, 1, 0})), image("it", normalize(vec({0, 0.6, 0.8})))}};
}

}  // namespace

TEST(AlphaSweep, AlphaZeroFailsCriterionTwoForPlus) {
  const std::vector<SweepCase> cases{{"gs+plus", PaeConfig(xy_plane(), {AugMethod::Plus, 0.0})}};
  const std::vector<double> alphas{0.0};
  const auto triples = r3_triple();
  const auto result = alpha_sweep(cases, alphas, triples);
  ASSERT_EQ(result.rows.size(), 1u);
  EXPECT_FALSE(result.rows[0].criterion2);
  EXPECT_NEAR(result.rows[0].mean_sim_pae_original, 1.0, 1e-15);
}

TEST(AlphaSweep, HandFixturePassesAtAlphaOne) {
  const std::vector<SweepCase> cases{{"gs+plus", PaeConfig(xy_plane(), {AugMethod::Plus, 0.0})}};
  const std::vector<double> alphas{0.5, 1.0, 2.0};
  const auto triples = r3_triple();
  const auto result = alpha_sweep(cases, alphas, triples);
  ASSERT_EQ(result.rows.size(), 3u);
  EXPECT_EQ(result.rows[1].alpha, 1.0);
  EXPECT_TRUE(result.rows[1].criterion1);
  EXPECT_TRUE(result.rows[1].criterion2);
  const auto ranges = result.passing_ranges("gs+plus");
  ASSERT_FALSE(ranges.empty());
  EXPECT_LE(ranges.front().first, 1.0);
  EXPECT_GE(ranges.front().second, 1.0);
}

TEST(AlphaSweep, FailingTriplesAreReportedNotDropped) {
  std::vector<PaeTriple> triples = r3_triple();
  triples.push_back({image("i2", vec({0.6, 0, 0.8})), text("t2", vec({0, 0, 1})), image("it2", vec({0, 1, 0}))});
  const std::vector<SweepCase> cases{{"gs+plus", PaeConfig(xy_plane(), {AugMethod::Plus, 0.0})}};
  const std::vector<double> alphas{1.0};
  const auto result = alpha_sweep(cases, alphas, triples);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].triple_index, 1u);
  EXPECT_EQ(result.failures[0].code, ErrorCode::NullTextProjection);
  EXPECT_EQ(result.rows[0].evaluated, 1u);
  // The mean covers the surviving triple only.
  EXPECT_NEAR(result.rows[0].mean_sim_pae_target, 1.0, 1e-12);
}

TEST(AlphaSweep, RowsSortedByConfigThenAlphaWithMeansOverTriples) {
  const auto set = std::make_shared<const Space>(build_sample_set(texts({vec({1, 0, 0}), vec({0, 1, 0})})));
  const std::vector<SweepCase> cases{{"z-config", PaeConfig(xy_plane(), {AugMethod::Plus, 0.0})},
                                     {"a-config", PaeConfig(set, {AugMethod::Exchange, 0.0})}};
  const std::vector<double> alphas{2.0, 0.0, 1.0};
  Rng rng(51);
  std::vector<PaeTriple> triples;
  for (int i = 0; i < 5; ++i) {
    triples.push_back({image("i" + std::to_string(i), rng.normal_vector(3)),
                       text("t" + std::to_string(i), vec({0.1, 1, 0.2}) + 0.1 * rng.normal_vector(3)),
                       image("it" + std::to_string(i), rng.normal_vector(3))});
  }
  const auto result = alpha_sweep(cases, alphas, triples);
  ASSERT_EQ(result.rows.size(), 6u);
  EXPECT_EQ(result.rows[0].config_id, "a-config");
  EXPECT_EQ(result.rows[0].alpha, 0.0);
  EXPECT_EQ(result.rows[2].alpha, 2.0);
  EXPECT_EQ(result.rows[3].config_id, "z-config");

  // Unweighted means recomputed per cell.
  for (const auto& row : result.rows) {
    const auto& base = row.config_id == "a-config" ? cases[1].config : cases[0].config;
    double sum = 0.0;
    for (const auto& t : triples) sum += evaluate_criteria(base.with_alpha(row.alpha), t.image, t.text, t.target).sim_pae_target;
    EXPECT_NEAR(row.mean_sim_pae_target, sum / 5.0, 1e-12);
  }
}

TEST(AlphaSweep, CsvHasHeaderAndOneRowPerCell) {
  const std::vector<SweepCase> cases{{"gs+plus", PaeConfig(xy_plane(), {AugMethod::Plus, 0.0})}};
  const std::vector<double> alphas{0, 2.5, 5, 10, 15};
  const auto triples = r3_triple();
  std::ostringstream out;
  write_sweep_csv(alpha_sweep(cases, alphas, triples), out);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "config_id,alpha,mean_sim_pae_target,mean_sim_text_target,mean_sim_pae_original,criterion1,criterion2");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(AlphaSweep, InvalidAlphaRecordedForEveryTriple) {
  const auto set = std::make_shared<const Space>(build_sample_set(texts({vec({1, 0, 0}), vec({0, 1, 0})})));
  const std::vector<SweepCase> cases{{"all+exd", PaeConfig(set, {AugMethod::ExchangeDistinct, 1.0})}};
  const std::vector<double> alphas{1.5};
  const auto triples = r3_triple();
  const auto result = alpha_sweep(cases, alphas, triples);
  ASSERT_EQ(result.failures.size(), 1u);
  EXPECT_EQ(result.failures[0].code, ErrorCode::InvalidAlpha);
  EXPECT_EQ(result.rows[0].evaluated, 0u);
  EXPECT_TRUE(std::isnan(result.rows[0].mean_sim_pae_target));
  EXPECT_FALSE(result.rows[0].criterion1);
}

TEST(AlphaSweep, TriplesFixtureHasPassingRangeForGsPlus) {
  const auto result = scenarios::triples_sweep(1, {0, 0.5, 1, 2, 5, 10});
  EXPECT_TRUE(result.failures.empty());
  EXPECT_FALSE(result.passing_ranges("gs+plus").empty());
  for (const auto& row : result.rows) {
    if (row.alpha == 0.0 && row.config_id.find("+plus") != std::string::npos) EXPECT_FALSE(row.criterion2) << row.config_id;
    EXPECT_EQ(row.evaluated, 8u);
  }
}
