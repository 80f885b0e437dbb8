#include "qsv/consistency.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qsv/parallel.hpp"

namespace qsv {
namespace {

std::vector<Position> valid_positions(const MotionField& field) {
  std::vector<Position> out;
  for (int r = 0; r < field.height(); ++r) {
    for (int c = 0; c < field.width(); ++c) {
      const auto& e = field.at(r, c);
      if (!e.valid) continue;
      out.push_back({r, c});
    }
  }
  return out;
}

std::vector<Vec2> square_grid(const std::vector<int>& offsets) {
  std::vector<Vec2> grid;
  grid.reserve(offsets.size() * offsets.size());
  for (int dy : offsets) {
    for (int dx : offsets) grid.push_back({dy, dx});
  }
  return grid;
}

std::vector<int> full_range(int s) {
  std::vector<int> r;
  for (int i = -s; i <= s; ++i) r.push_back(i);
  return r;
}

// Evaluates reverse costs at p + v for u = -v + delta over `deltas`; the
// entry passes iff delta = (0, 0) is the best candidate under the
// tie-break order.
bool zero_offset_wins(const MotionField& field, Position p, const SampledFrame& current,
                      const Frame& past, const MotionParams& params,
                      const std::vector<Vec2>& deltas, std::uint64_t& evaluations) {
  const Vec2 v = field[p].v;
  const Position at = p + v;
  double best_cost = 0.0;
  Vec2 best{};
  bool have = false;
  for (const Vec2& d : deltas) {
    const double cost = reverse_cost(past, current, at, -v + d, params);
    ++evaluations;
    if (!have || better_candidate(cost, d, best_cost, best)) {
      best_cost = cost;
      best = d;
      have = true;
    }
  }
  return best == Vec2{0, 0};
}

bool reverse_search_returns(const MotionField& field, Position p, const SampledFrame& current,
                            const Frame& past, const MotionParams& params,
                            const std::vector<Vec2>& grid, std::uint64_t& evaluations) {
  const Vec2 v = field[p].v;
  const Position at = p + v;
  double best_cost = 0.0;
  Vec2 best{};
  bool have = false;
  for (const Vec2& u : grid) {
    const double cost = reverse_cost(past, current, at, u, params);
    ++evaluations;
    if (!have || better_candidate(cost, u, best_cost, best)) {
      best_cost = cost;
      best = u;
      have = true;
    }
  }
  return best == -v;
}

template <class Verdict>
MotionField run_reverse_check(const MotionField& field, CheckStats* stats, int threads,
                              Verdict&& verdict) {
  MotionField out = field;
  const auto positions = valid_positions(field);
  std::vector<std::uint8_t> accepted(positions.size(), 0);
  std::vector<std::uint64_t> evaluations(positions.size(), 0);
  parallel_for(positions.size(), threads, [&](std::size_t i) {
    accepted[i] = verdict(positions[i], evaluations[i]) ? 1 : 0;
  });
  CheckStats local;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out[positions[i]].status = accepted[i] ? MotionStatus::accepted : MotionStatus::rejected;
    ++local.checked;
    (accepted[i] ? local.accepted : local.rejected) += 1;
    local.reverse_evaluations += evaluations[i];
  }
  if (stats) *stats += local;
  return out;
}

}  // namespace

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::none: return "none";
    case CheckKind::rme: return "rme";
    case CheckKind::rmc: return "rmc";
    case CheckKind::frmc: return "frmc";
    case CheckKind::nnc_frmc: return "nnc_frmc";
  }
  return "?";
}

CheckKind parse_check_kind(std::string_view text) {
  if (text == "none") return CheckKind::none;
  if (text == "rme") return CheckKind::rme;
  if (text == "rmc") return CheckKind::rmc;
  if (text == "frmc") return CheckKind::frmc;
  if (text == "nnc_frmc") return CheckKind::nnc_frmc;
  throw ConfigError("unknown consistency check '" + std::string(text) + "'");
}

void CheckMode::validate(const MotionParams& motion) const {
  if (std::find(frmc_offsets.begin(), frmc_offsets.end(), 0) == frmc_offsets.end()) {
    throw ConfigError("frmc offsets must contain 0");
  }
  for (int o : frmc_offsets) {
    if (std::abs(o) > motion.search_range) {
      throw ConfigError("frmc offset " + std::to_string(o) + " exceeds the search range");
    }
  }
  auto sorted = frmc_offsets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("frmc offsets must be distinct");
  }
  if (nnc_threshold < 0) throw ConfigError("nnc threshold must be >= 0");
}

CheckStats& CheckStats::operator+=(const CheckStats& o) {
  checked += o.checked;
  accepted += o.accepted;
  rejected += o.rejected;
  reverse_evaluations += o.reverse_evaluations;
  nnc_rejected += o.nnc_rejected;
  return *this;
}

FilteredField median_filter_field(const MotionField& field) {
  FilteredField out(field.width(), field.height());
  std::array<int, 9> dys{}, dxs{};
  for (int r = 0; r < field.height(); ++r) {
    for (int c = 0; c < field.width(); ++c) {
      if (!field.at(r, c).valid) continue;
      std::size_t n = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          Position q{r + dr, c + dc};
          if (!field.contains(q) || !field[q].valid) continue;
          dys[n] = field[q].v.dy;
          dxs[n] = field[q].v.dx;
          ++n;
        }
      }
      const auto mid = static_cast<std::ptrdiff_t>((n - 1) / 2);
      std::nth_element(dys.begin(), dys.begin() + mid, dys.begin() + static_cast<std::ptrdiff_t>(n));
      std::nth_element(dxs.begin(), dxs.begin() + mid, dxs.begin() + static_cast<std::ptrdiff_t>(n));
      out[{r, c}] = Vec2{dys[static_cast<std::size_t>(mid)], dxs[static_cast<std::size_t>(mid)]};
    }
  }
  return out;
}

MotionField check_rme(const MotionField& field, const SampledFrame& current, const Frame& past,
                      const MotionParams& params, CheckStats* stats, int threads) {
  const auto grid = square_grid(full_range(params.search_range));
  return run_reverse_check(field, stats, threads, [&](Position p, std::uint64_t& evals) {
    return reverse_search_returns(field, p, current, past, params, grid, evals);
  });
}

MotionField check_rmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                      const MotionParams& params, CheckStats* stats, int threads) {
  const auto deltas = square_grid(full_range(params.search_range));
  return run_reverse_check(field, stats, threads, [&](Position p, std::uint64_t& evals) {
    return zero_offset_wins(field, p, current, past, params, deltas, evals);
  });
}

MotionField check_frmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                       const MotionParams& params, const std::vector<int>& offsets,
                       CheckStats* stats, int threads) {
  const auto deltas = square_grid(offsets);
  return run_reverse_check(field, stats, threads, [&](Position p, std::uint64_t& evals) {
    return zero_offset_wins(field, p, current, past, params, deltas, evals);
  });
}

MotionField check_nnc(const MotionField& field, int threshold, CheckStats* stats) {
  const FilteredField filtered = median_filter_field(field);
  MotionField out = field;
  CheckStats local;
  constexpr std::array<Vec2, 4> neighbours{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
  for (int r = 0; r < field.height(); ++r) {
    for (int c = 0; c < field.width(); ++c) {
      const Position p{r, c};
      if (!field[p].valid) continue;
      const Vec2 centre = *filtered[p];
      bool ok = true;
      for (const Vec2& d : neighbours) {
        const Position q = p + d;
        if (!filtered.contains(q) || !filtered[q]) continue;
        const Vec2 other = *filtered[q];
        if (std::abs(centre.dy - other.dy) + std::abs(centre.dx - other.dx) > threshold) {
          ok = false;
          break;
        }
      }
      out[p].status = ok ? MotionStatus::accepted : MotionStatus::rejected;
      ++local.checked;
      if (ok) {
        ++local.accepted;
      } else {
        ++local.rejected;
        ++local.nnc_rejected;
      }
    }
  }
  if (stats) *stats += local;
  return out;
}

MotionField check_nnc_frmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                           const MotionParams& params, const std::vector<int>& offsets,
                           int threshold, CheckStats* stats, int threads) {
  CheckStats nnc_stats;
  MotionField out = check_nnc(field, threshold, &nnc_stats);

  // Only NNC survivors reach the reverse matching stage.
  MotionField survivors = out;
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      if (survivors.at(r, c).valid && survivors.at(r, c).status != MotionStatus::accepted) {
        survivors.at(r, c).valid = false;
      }
    }
  }
  CheckStats frmc_stats;
  MotionField verified = check_frmc(survivors, current, past, params, offsets, &frmc_stats, threads);
  for (int r = 0; r < out.height(); ++r) {
    for (int c = 0; c < out.width(); ++c) {
      if (survivors.at(r, c).valid) out.at(r, c).status = verified.at(r, c).status;
    }
  }

  if (stats) {
    CheckStats combined;
    combined.checked = nnc_stats.checked;
    combined.accepted = frmc_stats.accepted;
    combined.rejected = nnc_stats.rejected + frmc_stats.rejected;
    combined.nnc_rejected = nnc_stats.nnc_rejected;
    combined.reverse_evaluations = frmc_stats.reverse_evaluations;
    *stats += combined;
  }
  return out;
}

MotionField apply_check(const MotionField& field, const SampledFrame& current, const Frame& past,
                        const MotionParams& params, const CheckMode& mode, CheckStats* stats,
                        int threads) {
  mode.validate(params);
  switch (mode.kind) {
    case CheckKind::none: {
      MotionField out = field;
      CheckStats local;
      for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < out.width(); ++c) {
          auto& e = out.at(r, c);
          if (!e.valid) continue;
          e.status = MotionStatus::accepted;
          ++local.checked;
          ++local.accepted;
        }
      }
      if (stats) *stats += local;
      return out;
    }
    case CheckKind::rme: return check_rme(field, current, past, params, stats, threads);
    case CheckKind::rmc: return check_rmc(field, current, past, params, stats, threads);
    case CheckKind::frmc:
      return check_frmc(field, current, past, params, mode.frmc_offsets, stats, threads);
    case CheckKind::nnc_frmc:
      return check_nnc_frmc(field, current, past, params, mode.frmc_offsets, mode.nnc_threshold,
                            stats, threads);
  }
  return field;
}

}  // namespace qsv
