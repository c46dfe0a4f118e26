#include <paekit/generator.hpp>
#include <paekit/optimizer.hpp>
#include <paekit/pae.hpp>
#include <paekit/rng.hpp>
#include <paekit/subspace.hpp>

#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

using namespace paekit;

namespace {

std::vector<Embedding> random_texts(Rng& rng, Eigen::Index d, std::size_t n) {
  std::vector<Embedding> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"t" + std::to_string(i), Modality::Text, "", {}, rng.unit_vector(d)});
  }
  return out;
}

}  // namespace

// args: dim, prompts
static void BM_BuildGs(benchmark::State& state) {
  Rng rng(1);
  const auto prompts = random_texts(rng, state.range(0), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_gs(prompts));
}
BENCHMARK(BM_BuildGs)->Args({64, 6})->Args({512, 6})->Args({512, 64});

// args: dim, corpus size; 8 components. Corpus < dim takes the Gram route.
static void BM_BuildPca(benchmark::State& state) {
  Rng rng(2);
  const auto corpus = random_texts(rng, state.range(0), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_pca(corpus, 8));
}
BENCHMARK(BM_BuildPca)->Args({64, 200})->Args({512, 277})->Args({512, 1500});

static void BM_ComputePaePlus(benchmark::State& state) {
  Rng rng(3);
  const Eigen::Index d = state.range(0);
  const auto space = std::make_shared<const Space>(build_gs(random_texts(rng, d, 6)));
  const PaeConfig cfg(space, {AugMethod::Plus, 7.0});
  const Vector image = rng.unit_vector(d), text = rng.unit_vector(d);
  for (auto _ : state) benchmark::DoNotOptimize(compute_pae(cfg, image, text));
}
BENCHMARK(BM_ComputePaePlus)->Arg(64)->Arg(512);

static void BM_ComputePaeExchange(benchmark::State& state) {
  Rng rng(4);
  const Eigen::Index d = 512;
  const auto space =
      std::make_shared<const Space>(build_sample_set(random_texts(rng, d, static_cast<std::size_t>(state.range(0)))));
  const PaeConfig cfg(space, {AugMethod::Exchange, 1.0});
  const Vector image = rng.unit_vector(d), text = rng.unit_vector(d);
  for (auto _ : state) benchmark::DoNotOptimize(compute_pae(cfg, image, text));
}
BENCHMARK(BM_ComputePaeExchange)->Arg(277)->Arg(1500);

// args: generator kind (0 linear, 1 mlp1), latent dim
static void BM_LossValueAndGrad(benchmark::State& state) {
  const Eigen::Index d = 512;
  const Eigen::Index latent = state.range(1);
  const auto kind = state.range(0) == 0 ? GeneratorKind::Linear : GeneratorKind::Mlp1;
  const auto g = Generator::make(kind, 5, latent, d, kind == GeneratorKind::Mlp1 ? 128 : 0);
  Rng rng(6);
  const auto spec = LossSpec::naive(rng.unit_vector(d));
  const Vector z = rng.normal_vector(latent);
  for (auto _ : state) benchmark::DoNotOptimize(loss_value_and_grad(spec, g, z));
}
BENCHMARK(BM_LossValueAndGrad)->Args({0, 64})->Args({0, 512})->Args({1, 64});

BENCHMARK_MAIN();
