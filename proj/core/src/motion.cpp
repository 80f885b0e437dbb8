#include "qsv/motion.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

#include "qsv/parallel.hpp"

namespace qsv {
namespace {

struct TemplatePixel {
  int dr;
  int dc;
  double value;
};

inline double difference(double a, double b, CostMetric metric) {
  double d = a - b;
  return metric == CostMetric::mad ? std::abs(d) : d * d;
}

MotionEntry match_target(const SampledFrame& current, const Frame& past, const MotionParams& params,
                         Position p, std::vector<TemplatePixel>& tmpl) {
  const int r = params.template_radius;
  const int S = params.search_range;
  const int H = past.height(), W = past.width();

  tmpl.clear();
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      Position q{p.row + dr, p.col + dc};
      if (current.frame().contains(q) && current.measured(q)) {
        tmpl.push_back({dr, dc, current.value(q)});
      }
    }
  }

  MotionEntry best;
  if (static_cast<int>(tmpl.size()) < params.min_support) return best;

  const double* ref = past.values().data();
  const bool interior = p.row - r - S >= 0 && p.col - r - S >= 0 && p.row + r + S < H &&
                        p.col + r + S < W;
  for (int dy = -S; dy <= S; ++dy) {
    for (int dx = -S; dx <= S; ++dx) {
      const int tr = p.row + dy, tc = p.col + dx;
      if (tr < 0 || tc < 0 || tr >= H || tc >= W) continue;
      double sum = 0.0;
      int n = 0;
      if (interior) {
        for (const auto& t : tmpl) {
          sum += difference(t.value, ref[(tr + t.dr) * W + tc + t.dc], params.cost);
        }
        n = static_cast<int>(tmpl.size());
      } else {
        for (const auto& t : tmpl) {
          const int rr = tr + t.dr, cc = tc + t.dc;
          if (rr < 0 || cc < 0 || rr >= H || cc >= W) continue;
          sum += difference(t.value, ref[rr * W + cc], params.cost);
          ++n;
        }
      }
      if (n < params.min_support) continue;
      const double cost = sum / n;
      const Vec2 v{dy, dx};
      if (!best.valid || better_candidate(cost, v, best.cost, best.v)) {
        best.valid = true;
        best.v = v;
        best.cost = cost;
      }
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(CostMetric metric) {
  return metric == CostMetric::mad ? "mad" : "msd";
}

CostMetric parse_cost_metric(std::string_view text) {
  if (text == "mad") return CostMetric::mad;
  if (text == "msd") return CostMetric::msd;
  throw ConfigError("unknown cost metric '" + std::string(text) + "'");
}

std::string_view to_string(MotionStatus status) {
  switch (status) {
    case MotionStatus::candidate: return "candidate";
    case MotionStatus::accepted: return "accepted";
    case MotionStatus::rejected: return "rejected";
  }
  return "?";
}

void MotionParams::validate() const {
  if (search_range < 1) throw ConfigError("motion search_range must be >= 1");
  if (template_radius < 1) throw ConfigError("motion template_radius must be >= 1");
  if (min_support < 1) throw ConfigError("motion min_support must be >= 1");
}

std::size_t MotionField::valid_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_.values()) n += e.valid ? 1 : 0;
  return n;
}

std::size_t MotionField::count(MotionStatus status) const {
  std::size_t n = 0;
  for (const auto& e : entries_.values()) n += (e.valid && e.status == status) ? 1 : 0;
  return n;
}

void MotionField::write_csv(std::ostream& out) const {
  out << "row,col,d,dy,dx,cost,status\n";
  for (int r = 0; r < height(); ++r) {
    for (int c = 0; c < width(); ++c) {
      const auto& e = at(r, c);
      if (!e.valid) continue;
      out << r << ',' << c << ',' << ref_offset_ << ',' << e.v.dy << ',' << e.v.dx << ','
          << e.cost << ',' << to_string(e.status) << '\n';
    }
  }
}

bool better_candidate(double cost_a, Vec2 a, double cost_b, Vec2 b) {
  if (cost_a != cost_b) return cost_a < cost_b;
  const int la = std::abs(a.dy) + std::abs(a.dx);
  const int lb = std::abs(b.dy) + std::abs(b.dx);
  if (la != lb) return la < lb;
  if (a.dy != b.dy) return a.dy < b.dy;
  return a.dx < b.dx;
}

MotionField estimate(const SampledFrame& current, const Frame& past, const MotionParams& params,
                     const std::vector<Position>& targets, int ref_offset, int threads) {
  params.validate();
  if (current.width() != past.width() || current.height() != past.height()) {
    throw DimensionError("motion estimation between " + dims(current.width(), current.height()) +
                         " and " + dims(past.width(), past.height()));
  }
  for (const auto& p : targets) {
    if (!current.frame().contains(p) || current.measured(p)) {
      throw Error("motion target (" + std::to_string(p.row) + ", " + std::to_string(p.col) +
                  ") is not a missing pixel");
    }
  }

  MotionField field(current.width(), current.height(), ref_offset);
  std::vector<MotionEntry> results(targets.size());
  const std::size_t chunks = std::max<std::size_t>(1, static_cast<std::size_t>(std::max(threads, 1)));
  const std::size_t per_chunk = (targets.size() + chunks - 1) / chunks;
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    std::vector<TemplatePixel> tmpl;
    tmpl.reserve(static_cast<std::size_t>((2 * params.template_radius + 1) *
                                          (2 * params.template_radius + 1)));
    const std::size_t end = std::min(targets.size(), (chunk + 1) * per_chunk);
    for (std::size_t i = chunk * per_chunk; i < end; ++i) {
      results[i] = match_target(current, past, params, targets[i], tmpl);
    }
  });
  for (std::size_t i = 0; i < targets.size(); ++i) field[targets[i]] = results[i];
  return field;
}

MotionField estimate(const SampledFrame& current, const Frame& past, const MotionParams& params,
                     int ref_offset, int threads) {
  return estimate(current, past, params, current.missing_positions(), ref_offset, threads);
}

double reverse_cost(const Frame& past, const SampledFrame& current, Position at, Vec2 v,
                    const MotionParams& params) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const int H = past.height(), W = past.width();
  if (!past.contains(at) || !past.contains(at + v)) return inf;

  const int r = params.template_radius;
  const double* ref = past.values().data();
  const double* cur = current.frame().values().data();
  const std::uint8_t* mask = current.mask().bits().values().data();
  double sum = 0.0;
  int n = 0;
  const bool interior = at.row - r >= 0 && at.col - r >= 0 && at.row + r < H && at.col + r < W &&
                        at.row + v.dy - r >= 0 && at.col + v.dx - r >= 0 &&
                        at.row + v.dy + r < H && at.col + v.dx + r < W;
  if (interior) {
    // Unmeasured positions add exactly +0.0, so the sum matches the
    // bounds-checked loop below bit for bit.
    for (int dr = -r; dr <= r; ++dr) {
      const double* prow = ref + (at.row + dr) * W + at.col;
      const int srow = (at.row + dr + v.dy) * W + at.col + v.dx;
      const double* crow = cur + srow;
      const std::uint8_t* mrow = mask + srow;
      for (int dc = -r; dc <= r; ++dc) {
        const double m = mrow[dc];
        sum += m * difference(prow[dc], crow[dc], params.cost);
        n += mrow[dc];
      }
    }
    if (n < params.min_support) return inf;
    return sum / n;
  }
  for (int dr = -r; dr <= r; ++dr) {
    const int qr = at.row + dr, sr = qr + v.dy;
    if (qr < 0 || qr >= H || sr < 0 || sr >= H) continue;
    for (int dc = -r; dc <= r; ++dc) {
      const int qc = at.col + dc, sc = qc + v.dx;
      if (qc < 0 || qc >= W || sc < 0 || sc >= W) continue;
      const int si = sr * W + sc;
      if (!mask[si]) continue;
      sum += difference(ref[qr * W + qc], cur[si], params.cost);
      ++n;
    }
  }
  if (n < params.min_support) return inf;
  return sum / n;
}

}  // namespace qsv
