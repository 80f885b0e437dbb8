#include <benchmark/benchmark.h>

#include <random>

#include "qsv/consistency.hpp"
#include "qsv/fsr.hpp"
#include "qsv/mask.hpp"
#include "qsv/motion.hpp"
#include "qsv/pipeline.hpp"

namespace {

using namespace qsv;

// Smooth test content: a few low-frequency ramps plus mild noise, shifted by
// `shift` columns so consecutive calls form a translating sequence.
Frame content(int side, int shift, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-4.0, 4.0);
  std::vector<double> v(static_cast<std::size_t>(side * side));
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      const double x = c + shift;
      v[static_cast<std::size_t>(r * side + c)] =
          128.0 + 50.0 * std::sin(0.21 * x) * std::cos(0.17 * r) + 30.0 * std::sin(0.05 * (x + r)) + noise(rng);
    }
  }
  return Frame(side, side, v);
}

struct Pair {
  Frame past;
  SampledFrame current;
  MotionField field;
};

Pair make_pair(int side) {
  Pair p{content(side, 0), apply_mask(content(side, 2), generate_dynamic_mask(side, side, 3).mask_for(1)), {}};
  p.field = estimate(p.current, p.past, MotionParams{});
  return p;
}

void BM_BuildBlockModel(benchmark::State& state) {
  const FsrParams params;
  const auto s = apply_mask(content(64, 0), generate_fixed_mask(64, 64, 1).masks()[0]);
  const auto blocks = block_grid(64, 64, params);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_block(s, nullptr, params, blocks[i++ % blocks.size()]));
  }
}
BENCHMARK(BM_BuildBlockModel)->Unit(benchmark::kMicrosecond);

void BM_ReconstructFrame(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto s = apply_mask(content(side, 0), generate_fixed_mask(side, side, 1).masks()[0]);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_frame(s, nullptr, FsrParams{}, false));
}
BENCHMARK(BM_ReconstructFrame)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const Frame past = content(side, 0);
  const auto cur = apply_mask(content(side, 2), generate_dynamic_mask(side, side, 3).mask_for(1));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(cur, past, MotionParams{}));
}
BENCHMARK(BM_Estimate)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Check(benchmark::State& state) {
  const auto p = make_pair(64);
  const auto kind = static_cast<CheckKind>(state.range(0));
  CheckMode mode;
  mode.kind = kind;
  for (auto _ : state) benchmark::DoNotOptimize(apply_check(p.field, p.current, p.past, MotionParams{}, mode));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Check)
    ->Arg(static_cast<int>(CheckKind::rme))
    ->Arg(static_cast<int>(CheckKind::rmc))
    ->Arg(static_cast<int>(CheckKind::frmc))
    ->Arg(static_cast<int>(CheckKind::nnc_frmc))
    ->Unit(benchmark::kMillisecond);

void BM_DfsrFrame(benchmark::State& state) {
  PipelineConfig cfg;
  cfg.masks = generate_dynamic_mask(64, 64, 2);
  for (auto _ : state) {
    state.PauseTiming();
    History h(3);
    for (int t = 0; t < 3; ++t) h.push(content(64, 2 * t), apply_mask(content(64, 2 * t), cfg.masks.mask_for(t)));
    const auto cur = apply_mask(content(64, 6), cfg.masks.mask_for(3));
    state.ResumeTiming();
    benchmark::DoNotOptimize(reconstruct_next(h, cur, cfg));
  }
}
BENCHMARK(BM_DfsrFrame)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
