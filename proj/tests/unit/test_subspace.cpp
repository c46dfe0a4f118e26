#include "support.hpp"

#include <paekit/subspace.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace paekit;
using testing_support::error_of;
using testing_support::from_std;
using testing_support::texts;
using testing_support::to_std;
using testing_support::vec;

namespace {

void expect_vec_near(const Vector& got, const Vector& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  EXPECT_LE((got - want).cwiseAbs().maxCoeff(), tol) << "got " << got.transpose() << "\nwant " << want.transpose();
}

}  // namespace

TEST(BuildGs, AxisVectors) {
  const auto s = build_gs(texts({vec({1, 0, 0}), vec({0, 2, 0})}));
  EXPECT_EQ(s.method(), BasisMethod::GramSchmidt);
  EXPECT_TRUE(s.orthonormal());
  expect_vec_near(s.basis_vector(0), vec({1, 0, 0}), 1e-15);
  expect_vec_near(s.basis_vector(1), vec({0, 1, 0}), 1e-15);
}

TEST(BuildGs, CollinearInputIsDegenerateAndNamesPrompt) {
  auto prompts = texts({vec({1, 0}), vec({1, 1e-9})});
  prompts[1].label = "almost the same";
  try {
    build_gs(prompts);
    FAIL() << "expected DegenerateBasis";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateBasis);
    EXPECT_NE(std::string(e.what()).find("almost the same"), std::string::npos);
  }
}

TEST(BuildGs, HandComputedExample) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto s = build_gs(texts({vec({r, r, 0}), vec({1, 0, 0})}));
  // Oracle: textbook Gram-Schmidt on the same inputs.
  const auto expected = oracle::gram_schmidt({{r, r, 0}, {1, 0, 0}});
  expect_vec_near(s.basis_vector(0), from_std(expected[0]), 1e-12);
  expect_vec_near(s.basis_vector(1), from_std(expected[1]), 1e-12);
  expect_vec_near(s.basis_vector(1), vec({r, -r, 0}), 1e-12);
}

TEST(BuildGs, InputErrors) {
  EXPECT_EQ(error_of([] { build_gs({}); }), ErrorCode::EmptyInput);
  std::vector<Embedding> mixed{testing_support::image("i", vec({1, 0}))};
  EXPECT_EQ(error_of([&] { build_gs(mixed); }), ErrorCode::KindMismatch);
  EXPECT_EQ(error_of([] { build_gs(texts({vec({1, 0}), vec({0, 1, 0})})); }), ErrorCode::DimMismatch);
  EXPECT_EQ(error_of([] { build_gs(texts({vec({0, 0})})); }), ErrorCode::DegenerateBasis);
}

TEST(BuildGs, MatchesOracleAndPreservesSpan) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 20);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(d));
    std::vector<Vector> vs;
    std::vector<oracle::Vec> raw;
    for (Eigen::Index k = 0; k < n; ++k) {
      vs.push_back(rng.normal_vector(d));
      raw.push_back(to_std(vs.back()));
    }
    const auto s = build_gs(texts(vs));
    const auto expected = oracle::gram_schmidt(raw);
    for (Eigen::Index k = 0; k < n; ++k) {
      expect_vec_near(s.basis_vector(k), from_std(expected[static_cast<std::size_t>(k)]), 1e-8);
      expect_vec_near(project(s, vs[static_cast<std::size_t>(k)]), vs[static_cast<std::size_t>(k)], 1e-6);
    }
    EXPECT_LT((s.basis().transpose() * s.basis() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BuildRaw, Examples) {
  const auto s = build_raw(texts({vec({2, 0}), vec({0, 3})}));
  EXPECT_EQ(s.method(), BasisMethod::Raw);
  EXPECT_FALSE(s.orthonormal());
  expect_vec_near(s.basis_vector(0), vec({1, 0}), 1e-15);
  expect_vec_near(s.basis_vector(1), vec({0, 1}), 1e-15);

  const auto t = build_raw(texts({vec({1, 1}), vec({1, 0})}));
  const double r = 1.0 / std::sqrt(2.0);
  expect_vec_near(t.basis_vector(0), vec({r, r}), 1e-15);
  expect_vec_near(t.basis_vector(1), vec({1, 0}), 1e-15);

  EXPECT_EQ(error_of([] { build_raw({}); }), ErrorCode::EmptyInput);
  EXPECT_EQ(error_of([] { build_raw(texts({vec({0, 0})})); }), ErrorCode::ZeroVector);
}

TEST(BuildPca, PlanarPointsSpanThePlane) {
  const auto s = build_pca(texts({vec({1, 0, 0}), vec({0, 2, 0}), vec({-1, 0.5, 0}), vec({0.3, -1, 0})}), 2);
  EXPECT_EQ(s.method(), BasisMethod::Pca);
  EXPECT_LT(project(s, vec({0, 0, 1})).norm(), 1e-12);
  expect_vec_near(project(s, vec({0.2, -0.7, 0})), vec({0.2, -0.7, 0}), 1e-12);

  // Oracle: power iteration on the brute-force 3x3 covariance.
  const auto pairs = oracle::top_eigenpairs(
      oracle::covariance({{1, 0, 0}, {0, 2, 0}, {-1, 0.5, 0}, {0.3, -1, 0}}), 2);
  for (std::size_t k = 0; k < 2; ++k) {
    expect_vec_near(s.basis_vector(static_cast<Eigen::Index>(k)), from_std(pairs[k].vector), 1e-8);
    EXPECT_NEAR((*s.explained_variance())[k], pairs[k].value, 1e-10);
  }
}

TEST(BuildPca, IdenticalPointsAreRankDeficient) {
  EXPECT_EQ(error_of([] { build_pca(texts({vec({1, 2}), vec({1, 2}), vec({1, 2})}), 1); }), ErrorCode::RankDeficient);
}

TEST(BuildPca, NoisyAxisRecoversAxis) {
  Rng rng(8);
  std::vector<Vector> pts;
  for (int i = 0; i < 40; ++i) {
    Vector p = 0.01 * rng.normal_vector(5);
    p(0) += rng.uniform(-3, 3);
    pts.push_back(p);
  }
  const auto s = build_pca(texts(pts), 1);
  EXPECT_GT(std::abs(s.basis_vector(0)(0)), 0.99);
  EXPECT_GT(s.basis_vector(0)(0), 0.0);  // sign convention

  std::vector<oracle::Vec> raw;
  for (const auto& p : pts) raw.push_back(to_std(p));
  const auto pair = oracle::top_eigenpairs(oracle::covariance(raw), 1).front();
  expect_vec_near(s.basis_vector(0), from_std(pair.vector), 1e-8);
}

TEST(BuildPca, ArgumentErrors) {
  EXPECT_EQ(error_of([] { build_pca({}, 1); }), ErrorCode::EmptyInput);
  EXPECT_EQ(error_of([] { build_pca(texts({vec({1, 0}), vec({0, 1})}), 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { build_pca(texts({vec({1, 0}), vec({0, 1})}), 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { build_pca(texts({vec({1, 0}), vec({0, 1, 1})}), 1); }), ErrorCode::DimMismatch);
}

TEST(PrincipalComponents, CovarianceAndGramRoutesAgree) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 4 + static_cast<Eigen::Index>(rng.next() % 10);
    const Eigen::Index d = 3 + static_cast<Eigen::Index>(rng.next() % 12);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(std::min(n - 1, d)));
    Matrix samples(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      samples.row(i) = (rng.normal_vector(d).array() * Eigen::ArrayXd::LinSpaced(d, 3.0, 0.5)).matrix().transpose();
    }
    const auto a = principal_components(samples, k, PcaRoute::Covariance);
    const auto b = principal_components(samples, k, PcaRoute::Gram);
    for (Eigen::Index c = 0; c < k; ++c) {
      EXPECT_NEAR(a.variances[static_cast<std::size_t>(c)], b.variances[static_cast<std::size_t>(c)], 1e-9);
      expect_vec_near(a.components.col(c), b.components.col(c), 1e-6);
    }
    EXPECT_LT((b.components.transpose() * b.components - Matrix::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(BuildSampleSet, Examples) {
  const auto m = build_sample_set(texts({vec({2, 0}), vec({0, 5}), vec({1, 1})}));
  ASSERT_EQ(m.size(), 3u);
  for (const auto& member : m.members()) EXPECT_NEAR(member.vector.norm(), 1.0, 1e-12);

  EXPECT_EQ(error_of([] { build_sample_set(texts({vec({1, 0}), vec({0, 0})})); }), ErrorCode::ZeroVector);
  EXPECT_EQ(error_of([] { build_sample_set({}); }), ErrorCode::EmptyInput);

  auto dup = texts({vec({1, 0}), vec({1, 0})});
  dup[0].label = "first";
  dup[1].label = "second";
  const auto d = build_sample_set(dup);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.members()[0].label, "first");
  EXPECT_EQ(d.members()[1].label, "second");
}

TEST(Project, SpecExamples) {
  const auto s = build_gs(texts({vec({1, 0, 0}), vec({0, 1, 0})}));
  expect_vec_near(project(s, vec({0.6, 0, 0.8})), vec({0.6, 0, 0}), 1e-15);
  expect_vec_near(project(s, vec({0.3, -0.2, 0})), vec({0.3, -0.2, 0}), 1e-15);
  EXPECT_EQ(error_of([&] { project(s, vec({1, 0})); }), ErrorCode::DimMismatch);

  const double r = 1.0 / std::sqrt(2.0);
  const auto raw = build_raw(texts({vec({1, 0}), vec({r, r})}));
  expect_vec_near(project(raw, vec({1, 0})), vec({1.5, 0.5}), 1e-12);
}

TEST(Coefficients, SpecExamples) {
  const auto s = build_gs(texts({vec({1, 0, 0}), vec({0, 1, 0})}));
  expect_vec_near(coefficients(s, vec({0.6, 0, 0.8})), vec({0.6, 0}), 1e-15);
  expect_vec_near(coefficients(s, vec({0, 0, 3})), vec({0, 0}), 1e-15);
  EXPECT_EQ(error_of([&] { coefficients(s, vec({1})); }), ErrorCode::DimMismatch);

  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto t = testing_support::random_gs(rng, 12, 5);
    const Vector v = rng.normal_vector(12);
    expect_vec_near(coefficients(t, project(t, v)), coefficients(t, v), 1e-12);
  }
}

TEST(ProjectAll, SpecExamples) {
  const auto m = build_sample_set(texts({vec({1, 0, 0}), vec({0, 1, 0})}));
  const auto hit = project_all(m, vec({0.8, 0.6, 0}));
  EXPECT_EQ(hit.index, 0u);
  expect_vec_near(hit.vector, vec({1, 0, 0}), 0);

  EXPECT_EQ(project_all(m, vec({0, 1, 0})).index, 1u);
  // Equidistant from both members: the first wins.
  EXPECT_EQ(project_all(m, vec({1, 1, 0})).index, 0u);

  EXPECT_EQ(error_of([&] { project_all(m, vec({1, 0})); }), ErrorCode::DimMismatch);
  EXPECT_EQ(error_of([&] { project_all(m, vec({0, 0, 0})); }), ErrorCode::ZeroVector);
}

TEST(ProjectAll, MatchesBruteForce) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 10);
    std::vector<Vector> vs;
    std::vector<oracle::Vec> raw;
    const int count = 1 + static_cast<int>(rng.next() % 15);
    for (int k = 0; k < count; ++k) {
      vs.push_back(rng.normal_vector(d));
      raw.push_back(to_std(vs.back()));
    }
    const auto m = build_sample_set(texts(vs));
    const Vector q = rng.normal_vector(d);
    EXPECT_EQ(project_all(m, q).index, oracle::brute_argmax_cosine(raw, to_std(q)));
  }
}

TEST(RankMembers, OrderedByCosineWithStableTies) {
  const auto m = build_sample_set(texts({vec({0, 1}), vec({1, 0}), vec({1, 0}), vec({-1, 0})}));
  EXPECT_EQ(rank_members(m, vec({1, 0.1})), (std::vector<std::size_t>{1, 2, 0, 3}));
}

TEST(SubspaceProperties, IdempotenceResidualContraction) {
  Rng rng(1234);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next() % 30);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(d));
    const auto s = testing_support::random_gs(rng, d, n);
    const Vector v = rng.normal_vector(d) * rng.uniform(0.1, 10.0);
    const Vector p = project(s, v);
    EXPECT_LT((project(s, p) - p).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LT((s.basis().transpose() * (v - p)).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE(p.norm(), v.norm() + 1e-9);
    // Independent projection formula.
    std::vector<oracle::Vec> basis;
    for (Eigen::Index k = 0; k < n; ++k) basis.push_back(to_std(s.basis_vector(k)));
    expect_vec_near(p, from_std(oracle::project(basis, to_std(v))), 1e-10);
  }
}

TEST(SubspaceProperties, PcaOrthonormalWithNonIncreasingVariance) {
  Rng rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 3 + static_cast<Eigen::Index>(rng.next() % 10);
    const int count = 5 + static_cast<int>(rng.next() % 20);
    std::vector<Vector> pts;
    for (int i = 0; i < count; ++i) pts.push_back(rng.normal_vector(d));
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(std::min<Eigen::Index>(d, count - 1)));
    const auto s = build_pca(texts(pts), n);
    EXPECT_LT((s.basis().transpose() * s.basis() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-6);
    const auto& ev = *s.explained_variance();
    for (std::size_t k = 1; k < ev.size(); ++k) EXPECT_LE(ev[k], ev[k - 1]);
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::Index arg = 0;
      s.basis_vector(k).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(s.basis_vector(k)(arg), 0.0);
    }
  }
}

TEST(CorpusSubspace, ConstructorInvariants) {
  EXPECT_EQ(error_of([] { CorpusSubspace(Matrix::Identity(2, 3), BasisMethod::Raw, {"a", "b", "c"}); }),
            ErrorCode::InvalidArgument);
  Matrix skew(2, 2);
  skew << 1, 0.5, 0, 1;
  EXPECT_EQ(error_of([&] { CorpusSubspace(skew, BasisMethod::GramSchmidt, {"a", "b"}); }), ErrorCode::InvalidArgument);
  EXPECT_FALSE(error_of([&] { CorpusSubspace(skew, BasisMethod::Raw, {"a", "b"}); }).has_value());
  EXPECT_EQ(error_of([] {
              CorpusSubspace(Matrix::Identity(2, 2), BasisMethod::Pca, {"a", "b"}, std::vector<double>{1.0, 2.0});
            }),
            ErrorCode::InvalidArgument);
}

TEST(ManifoldSet, RejectsNonUnitMembers) {
  EXPECT_EQ(error_of([] { ManifoldSet({{"a", vec({2, 0})}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { ManifoldSet({}); }), ErrorCode::EmptyInput);
}

TEST(BasisMethod, StringForms) {
  EXPECT_EQ(basis_method_from_string("gram_schmidt"), BasisMethod::GramSchmidt);
  EXPECT_EQ(basis_method_from_string("gs"), BasisMethod::GramSchmidt);
  EXPECT_EQ(to_string(BasisMethod::Pca), "pca");
  EXPECT_EQ(error_of([] { basis_method_from_string("ica"); }), ErrorCode::SchemaError);
}
