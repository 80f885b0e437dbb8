// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsv/consistency.hpp"
#include "qsv/fsr.hpp"
#include "qsv/mask.hpp"
#include "qsv/metrics.hpp"
#include "qsv/motion.hpp"
#include "qsv/pipeline.hpp"
#include "qsv/projection.hpp"

namespace qsv {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("violated: " + what);
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// -- shared large-sequence runs (criteria 2, 3, 4) --

constexpr int kSide = 256;
constexpr int kFrames = 20;
constexpr Vec2 kMotion{1, -2};

struct SequenceRuns {
  std::vector<Frame> truth;
  RunResult single, rmc, nnc_frmc, fixed;
};

PipelineConfig large_config(MaskSchedule masks, Variant variant, CheckKind check) {
  PipelineConfig c;
  c.masks = std::move(masks);
  c.variant = variant;
  c.check.kind = check;
  c.threads = 1;
  return c;
}

const SequenceRuns& sequence_runs() {
  static const SequenceRuns runs = [] {
    SequenceRuns s;
    s.truth = oracle::global_translation(kSide, kSide, kFrames, kMotion, 2024);
    const auto dynamic = generate_dynamic_mask(kSide, kSide, 1);
    const auto fixed = generate_fixed_mask(kSide, kSide, 1);
    s.single = run_sequence(s.truth, large_config(dynamic, Variant::single_fsr, CheckKind::nnc_frmc));
    s.nnc_frmc = run_sequence(s.truth, large_config(dynamic, Variant::dfsr, CheckKind::nnc_frmc));
    s.rmc = run_sequence(s.truth, large_config(dynamic, Variant::dfsr, CheckKind::rmc));
    s.fixed = run_sequence(s.truth, large_config(fixed, Variant::dfsr, CheckKind::nnc_frmc));
    return s;
  }();
  return runs;
}

double window_psnr(const SequenceRuns& s, const RunResult& run) {
  double sum = 0.0;
  for (int t = 10; t < kFrames; ++t) {
    sum += psnr(s.truth[static_cast<std::size_t>(t)], run.reconstructions[static_cast<std::size_t>(t)]);
  }
  return sum / 10.0;
}

// -- small fixtures --

struct TranslatedPair {
  Frame past;
  SampledFrame current;
  MotionField truth_field;  // true vector at interior missing pixels
};

TranslatedPair translated_pair(int side, Vec2 v, std::uint64_t seed, int margin) {
  const auto seq = oracle::global_translation(side, side, 2, v, seed);
  TranslatedPair p{seq[0], apply_mask(seq[1], generate_dynamic_mask(side, side, seed).mask_for(1)),
                   MotionField(side, side)};
  for (const auto& q : p.current.missing_positions()) {
    if (q.row < margin || q.col < margin || q.row >= side - margin || q.col >= side - margin) continue;
    p.truth_field[q] = MotionEntry{true, v, 0.0};
  }
  return p;
}

// -- criteria --

Outcome evaluation_counts() {
  Outcome o;
  const auto fx = translated_pair(64, {2, -3}, 5, 0);
  const MotionParams mp;
  const auto field = estimate(fx.current, fx.past, mp);
  const std::uint64_t n = field.valid_count();
  CheckStats rme, rmc, frmc;
  check_rme(field, fx.current, fx.past, mp, &rme);
  check_rmc(field, fx.current, fx.past, mp, &rmc);
  check_frmc(field, fx.current, fx.past, mp, CheckMode{}.frmc_offsets, &frmc);
  o.require(n > 0, "non-empty field");
  o.require(rme.checked == n && rmc.checked == n && frmc.checked == n, "every valid vector checked");
  o.require(rme.reverse_evaluations == 361 * n, "RME 361 per vector");
  o.require(rmc.reverse_evaluations == 361 * n, "RMC 361 per vector");
  o.require(frmc.reverse_evaluations == 49 * n, "FRMC 49 per vector");
  o.note(std::to_string(n) + " vectors; RME " + fmt("%.0f", double(rme.reverse_evaluations) / double(n)) +
         ", RMC " + fmt("%.0f", double(rmc.reverse_evaluations) / double(n)) + ", FRMC " +
         fmt("%.0f", double(frmc.reverse_evaluations) / double(n)) + " per vector");
  return o;
}

Outcome check_speedup() {
  Outcome o;
  const auto& s = sequence_runs();
  const double ratio = s.rmc.timings.cc / s.nnc_frmc.timings.cc;
  o.require(ratio >= 5.0, "RMC/NNC+FRMC CC time >= 5");
  o.note("CC " + fmt2("%.2f s (RMC) vs %.2f s (NNC+FRMC)", s.rmc.timings.cc, s.nnc_frmc.timings.cc) +
         ", " + fmt("%.2fx", ratio));
  return o;
}

Outcome recursive_gain() {
  Outcome o;
  const auto& s = sequence_runs();
  const double base = window_psnr(s, s.single), rec = window_psnr(s, s.nnc_frmc);
  o.require(rec - base >= 1.0, "D-FSR gain >= 1 dB");
  o.note(fmt2("FSR %.2f dB, D-FSR+NNC+FRMC %.2f dB", base, rec) + fmt(", gain %+.2f dB", rec - base));
  return o;
}

Outcome dynamic_vs_fixed() {
  Outcome o;
  const auto& s = sequence_runs();
  const double dyn = window_psnr(s, s.nnc_frmc), fix = window_psnr(s, s.fixed);
  o.require(dyn >= fix, "dynamic >= fixed");
  o.note(fmt2("dynamic %.2f dB, fixed %.2f dB", dyn, fix) + fmt(", margin %+.2f dB", dyn - fix));
  if (dyn - fix < 0.3) o.note("below the expected +0.3 dB");
  return o;
}

Outcome motion_oracle() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> shift(-6, 6);
  std::size_t compared = 0, mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const Vec2 v{shift(rng), shift(rng)};
    const auto seq = oracle::global_translation(16, 16, 2, v, rng());
    const auto cur = oracle::sample(seq[1], oracle::random_quarter_mask(16, 16, rng()));
    const auto field = estimate(cur, seq[0], MotionParams{});
    for (const auto& p : cur.missing_positions()) {
      const auto ref = oracle::brute_force_match(cur, seq[0], p);
      ++compared;
      const auto& e = field[p];
      const bool same = ref ? (e.valid && e.v == ref->v && e.cost == ref->cost) : !e.valid;
      mismatches += !same;
    }
  }
  o.require(mismatches == 0, "bit-exact agreement");
  o.note(std::to_string(compared) + " pixels over 200 instances, " + std::to_string(mismatches) + " mismatches");
  return o;
}

Outcome true_motion_acceptance() {
  Outcome o;
  const MotionParams mp;
  const auto fx = translated_pair(96, {2, -3}, 8, mp.search_range + mp.template_radius);
  const auto& f = fx.truth_field;
  const double n = static_cast<double>(f.valid_count());
  auto rate = [&](const MotionField& out) { return out.count(MotionStatus::accepted) / n; };
  const double rme = rate(check_rme(f, fx.current, fx.past, mp));
  const double rmc = rate(check_rmc(f, fx.current, fx.past, mp));
  const double frmc = rate(check_frmc(f, fx.current, fx.past, mp, CheckMode{}.frmc_offsets));
  const double nnc = rate(check_nnc(f, 1));
  for (auto [name, r] : {std::pair{"RME", rme}, {"RMC", rmc}, {"FRMC", frmc}, {"NNC", nnc}}) {
    o.require(r >= 0.99, std::string(name) + " accepts >= 99%");
  }
  o.note("true-vector acceptance RME " + fmt("%.3f", rme) + ", RMC " + fmt("%.3f", rmc) + ", FRMC " +
         fmt("%.3f", frmc) + ", NNC " + fmt("%.3f", nnc));

  const auto pair = oracle::occlusion_paste(64, 64, {2, -3}, {20, 20}, 24, 41);
  const auto cur = apply_mask(pair.current, generate_dynamic_mask(64, 64, 2).mask_for(1));
  const auto field = estimate(cur, pair.past, mp);
  auto rejection = [&](const MotionField& out) {
    int total = 0, rejected = 0;
    for (const auto& p : cur.missing_positions()) {
      if (!field[p].valid || !pair.occluded(p + pair.v, 4)) continue;
      ++total;
      rejected += out[p].status == MotionStatus::rejected;
    }
    return total > 0 ? static_cast<double>(rejected) / total : 0.0;
  };
  const double orme = rejection(check_rme(field, cur, pair.past, mp));
  const double ormc = rejection(check_rmc(field, cur, pair.past, mp));
  const double ofrmc = rejection(check_frmc(field, cur, pair.past, mp, CheckMode{}.frmc_offsets));
  for (auto [name, r] : {std::pair{"RME", orme}, {"RMC", ormc}, {"FRMC", ofrmc}}) {
    o.require(r >= 0.8, std::string(name) + " rejects >= 80% occluded");
  }
  o.note("occluded rejection RME " + fmt("%.3f", orme) + ", RMC " + fmt("%.3f", ormc) + ", FRMC " +
         fmt("%.3f", ofrmc));
  return o;
}

Outcome sparse_recovery() {
  Outcome o;
  EvalConfig eval;
  eval.border = 0;
  double sum = 0.0, worst = INFINITY;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int k = 1 + static_cast<int>(seed % 5);
    const Frame img = oracle::make_sparse_spectrum_image(32, k, seed, 64);
    const auto s = apply_mask(img, generate_fixed_mask(64, 64, seed).masks()[0]);
    const double q = std::min(psnr(img, reconstruct_frame(s, nullptr, FsrParams{}, false), eval), 100.0);
    sum += q;
    worst = std::min(worst, q);
  }
  const double mean = sum / 20.0;
  o.require(mean >= 40.0, "average >= 40 dB");
  o.note(fmt2("average %.2f dB over 20 seeds (worst %.2f dB, capped at 100)", mean, worst));
  return o;
}

Outcome exact_invariants() {
  Outcome o;
  // Pass-through and block order.
  {
    const Frame f = oracle::static_texture(48, 40, 1, 3)[0];
    const auto s = apply_mask(f, generate_dynamic_mask(48, 40, 3).mask_for(2));
    FsrParams p;
    p.iterations = 30;
    const Frame out = reconstruct_frame(s, nullptr, p, false);
    bool pass_through = true;
    for (int r = 0; r < 40; ++r) {
      for (int c = 0; c < 48; ++c) pass_through = pass_through && (!s.measured({r, c}) || out(r, c) == f(r, c));
    }
    o.require(pass_through, "measured pass-through");

    auto blocks = block_grid(48, 40, p);
    std::shuffle(blocks.begin(), blocks.end(), std::mt19937(5));
    bool ordered = true;
    for (const auto& b : blocks) {
      const auto core = reconstruct_block(s, nullptr, p, b);
      for (int r = 0; r < p.block_size; ++r) {
        for (int c = 0; c < p.block_size; ++c) {
          const Position q{b.row * p.block_size + r, b.col * p.block_size + c};
          const double expect = s.measured(q) ? f[q] : std::clamp(core[static_cast<std::size_t>(r * p.block_size + c)], 0.0, 255.0);
          ordered = ordered && out[q] == expect;
        }
      }
    }
    o.require(ordered, "block-order invariance");
    o.require(reconstruct_frame(s, nullptr, p, false, 3) == out, "thread invariance");
  }
  // Causality.
  {
    auto truth = oracle::global_translation(32, 32, 4, {1, 0}, 12);
    PipelineConfig cfg;
    cfg.masks = generate_dynamic_mask(32, 32, 4);
    cfg.fsr.iterations = 30;
    const auto before = run_sequence(truth, cfg);
    truth[3] = Frame(32, 32, std::vector<double>(32 * 32, 200.0), 3);
    const auto after = run_sequence(truth, cfg);
    bool causal = true;
    for (std::size_t t = 0; t < 3; ++t) causal = causal && before.reconstructions[t] == after.reconstructions[t];
    o.require(causal, "causality");
  }
  // Projection order.
  {
    const auto seq = oracle::global_translation(48, 48, 4, {1, -1}, 13);
    const auto masks = generate_dynamic_mask(48, 48, 6);
    std::vector<MotionField> fields;
    std::vector<SampledFrame> pasts;
    const auto cur = apply_mask(seq[3], masks.mask_for(3));
    for (int d = 1; d <= 3; ++d) {
      pasts.push_back(apply_mask(seq[static_cast<std::size_t>(3 - d)], masks.mask_for(3 - d)));
      auto f = estimate(cur, seq[static_cast<std::size_t>(3 - d)], MotionParams{});
      fields.push_back(check_nnc(f, 1));
    }
    std::vector<int> order{0, 1, 2};
    ProjectionBuffer reference(48, 48);
    for (int d : order) project(fields[static_cast<std::size_t>(d)], pasts[static_cast<std::size_t>(d)], reference);
    bool same = true;
    while (std::next_permutation(order.begin(), order.end())) {
      ProjectionBuffer buf(48, 48);
      for (int d : order) project(fields[static_cast<std::size_t>(d)], pasts[static_cast<std::size_t>(d)], buf);
      same = same && buf == reference;
    }
    o.require(same, "projection-order invariance");
  }
  // Mask coverage.
  {
    bool quarter = true, once = true;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto fixed = generate_fixed_mask(64, 48, seed);
      for (int t = 0; t < 4; ++t) quarter = quarter && is_quarter_sampled(fixed.mask_for(t));
      const auto dyn = generate_dynamic_mask(64, 48, seed);
      std::vector<int> sum(64 * 48, 0);
      for (int t = 0; t < 4; ++t) {
        quarter = quarter && is_quarter_sampled(dyn.mask_for(t));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += dyn.mask_for(t).bits().values()[i];
      }
      once = once && std::all_of(sum.begin(), sum.end(), [](int v) { return v == 1; });
    }
    o.require(quarter, "quarter density");
    o.require(once, "dynamic exact-once-in-4");
  }
  // NNC idempotence.
  {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> d(-3, 3);
    std::bernoulli_distribution valid(0.7);
    bool idempotent = true;
    for (int trial = 0; trial < 20; ++trial) {
      MotionField f(24, 24);
      for (int r = 0; r < 24; ++r) {
        for (int c = 0; c < 24; ++c) {
          if (valid(rng)) f.at(r, c) = {true, {d(rng), d(rng)}, 1.0};
        }
      }
      const auto once = check_nnc(f, 1);
      idempotent = idempotent && check_nnc(once, 1) == once;
    }
    o.require(idempotent, "NNC idempotence");
  }
  // Metric border exclusion.
  {
    const Frame a = oracle::static_texture(120, 120, 1, 30)[0];
    std::vector<double> b(a.values()), c;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::clamp(b[i] + static_cast<double>(i % 7) - 3.0, 0.0, 255.0);
    c = b;
    for (int r = 0; r < 120; ++r) {
      for (int x = 0; x < 120; ++x) {
        if (r < 40 || x < 40 || r >= 80 || x >= 80) c[static_cast<std::size_t>(r * 120 + x)] = 255.0 - c[static_cast<std::size_t>(r * 120 + x)];
      }
    }
    const Frame fb(120, 120, b), fc(120, 120, c);
    o.require(psnr(a, fb) == psnr(a, fc) && ssim(a, fb) == ssim(a, fc), "border-exclusion invariance");
  }
  if (o.pass) o.note("pass-through, block order, threads, causality, projection order, masks, NNC, border");
  return o;
}

Outcome metric_oracles() {
  Outcome o;
  const Frame zero(100, 100, std::vector<double>(100 * 100, 0.0));
  const Frame sixteen(100, 100, std::vector<double>(100 * 100, 16.0));
  const double closed = 10.0 * std::log10(255.0 * 255.0 / 256.0);
  const double got = psnr(zero, sixteen);
  o.require(std::abs(got - closed) <= 1e-6, "PSNR at MSE 256 equals 10 log10(255^2/256) within 1e-6");
  o.note(fmt2("PSNR(MSE 256) %.6f dB, closed form %.6f dB", got, closed));

  double worst = 0.0;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 8; ++i) {
    const Frame a = oracle::static_texture(112, 112, 1, rng())[0];
    std::normal_distribution<double> noise(0.0, 4.0 + 3.0 * i);
    std::vector<double> b(a.values());
    for (auto& v : b) v = std::clamp(v + noise(rng), 0.0, 255.0);
    const Frame fb(112, 112, b);
    worst = std::max(worst, std::abs(ssim(a, fb) - oracle::direct_ssim(a, fb)));
  }
  o.require(worst <= 1e-9, "SSIM within 1e-9 of direct definition");
  o.note(fmt("SSIM max deviation %.2e over 8 fixtures", worst));
  return o;
}

Outcome rfsr_vs_dfsr() {
  Outcome o;
  // Differential: same history, only the final overwrite differs.
  {
    const auto truth = oracle::global_translation(64, 64, 3, {1, 2}, 9);
    const auto masks = generate_dynamic_mask(64, 64, 7);
    PipelineConfig d;
    d.masks = masks;
    d.check.kind = CheckKind::frmc;
    PipelineConfig r = d;
    r.variant = Variant::rfsr;
    History hd(3);
    for (int t = 0; t < 2; ++t) {
      hd.push(truth[static_cast<std::size_t>(t)], apply_mask(truth[static_cast<std::size_t>(t)], masks.mask_for(t)));
    }
    History hr = hd;
    const auto cur = apply_mask(truth[2], masks.mask_for(2));
    const auto buffer = gather_projections(hd, cur, d);
    const Frame fd = reconstruct_next(hd, cur, d), fr = reconstruct_next(hr, cur, r);
    int differing = 0;
    bool only_projected = true;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 64; ++x) {
        if (fd(y, x) == fr(y, x)) continue;
        ++differing;
        only_projected = only_projected && buffer.has({y, x}) && !cur.measured({y, x});
      }
    }
    o.require(only_projected, "differences only at projected-only pixels");
    o.require(differing > 0, "variants differ somewhere");
    o.note(std::to_string(differing) + " differing pixels, all projected-only");
  }
  // Adversarial: every projection follows a wrong vector.
  {
    double dsum = 0.0, rsum = 0.0;
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Vec2 v{1, -1};
      const auto seq = oracle::global_translation(128, 128, 2, v, 50 + seed);
      const auto masks = generate_dynamic_mask(128, 128, seed);
      const auto past = apply_mask(seq[0], masks.mask_for(0));
      const auto cur = apply_mask(seq[1], masks.mask_for(1));
      MotionField wrong(128, 128);
      for (const auto& p : cur.missing_positions()) {
        wrong[p] = MotionEntry{true, {v.dy + 3, v.dx - 4}, 0.0};
        wrong[p].status = MotionStatus::accepted;
      }
      ProjectionBuffer buf(128, 128);
      project(wrong, past, buf);
      dsum += psnr(seq[1], reconstruct_frame(cur, &buf, FsrParams{}, false));
      rsum += psnr(seq[1], reconstruct_frame(cur, &buf, FsrParams{}, true));
    }
    o.require(dsum >= rsum, "D-FSR >= R-FSR under corrupted projections");
    o.note(fmt2("corrupted projections: D-FSR %.2f dB, R-FSR %.2f dB", dsum / 4, rsum / 4));
  }
  return o;
}

}  // namespace
}  // namespace qsv

int main() {
  using namespace qsv;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"evaluation counts", evaluation_counts},
      {"consistency-check speedup", check_speedup},
      {"recursive gain", recursive_gain},
      {"dynamic vs fixed mask", dynamic_vs_fixed},
      {"motion estimation oracle", motion_oracle},
      {"true-motion acceptance", true_motion_acceptance},
      {"FSR sparse recovery", sparse_recovery},
      {"exact invariants", exact_invariants},
      {"metric oracles", metric_oracles},
      {"R-FSR vs D-FSR", rfsr_vs_dfsr},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %zu %s: %s (%s) [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
