#include "qsv/metrics.hpp"

#include <cmath>
#include <limits>

namespace qsv {
namespace {

void check_pair(const Frame& ref, const Frame& test, const EvalConfig& cfg) {
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw DimensionError("cannot compare " + dims(ref.width(), ref.height()) + " with " +
                         dims(test.width(), test.height()));
  }
  cfg.validate(ref.width(), ref.height());
}

std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> g(static_cast<std::size_t>(size));
  const double centre = (size - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - centre;
    g[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * sigma * sigma));
    total += g[static_cast<std::size_t>(i)];
  }
  for (auto& v : g) v /= total;
  return g;
}

// Separable "valid" correlation of a rows x cols image with the taps.
std::vector<double> filter_valid(const std::vector<double>& img, int rows, int cols,
                                 const std::vector<double>& taps) {
  const int k = static_cast<int>(taps.size());
  const int out_cols = cols - k + 1, out_rows = rows - k + 1;
  std::vector<double> tmp(static_cast<std::size_t>(rows) * out_cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < out_cols; ++c) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += taps[static_cast<std::size_t>(i)] * img[static_cast<std::size_t>(r * cols + c + i)];
      tmp[static_cast<std::size_t>(r * out_cols + c)] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_rows) * out_cols);
  for (int r = 0; r < out_rows; ++r) {
    for (int c = 0; c < out_cols; ++c) {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += taps[static_cast<std::size_t>(i)] * tmp[static_cast<std::size_t>((r + i) * out_cols + c)];
      out[static_cast<std::size_t>(r * out_cols + c)] = s;
    }
  }
  return out;
}

}  // namespace

void EvalConfig::validate(int width, int height) const {
  if (border < 0) throw ConfigError("evaluation border must be >= 0");
  if (2 * border >= std::min(width, height)) {
    throw ConfigError("evaluation border " + std::to_string(border) + " leaves no interior in " +
                      dims(width, height));
  }
  if (!(peak > 0.0)) throw ConfigError("peak must be positive");
  if (ssim_window < 1 || ssim_window % 2 == 0) throw ConfigError("ssim window must be odd");
  if (!(ssim_sigma > 0.0)) throw ConfigError("ssim sigma must be positive");
}

double psnr(const Frame& ref, const Frame& test, const EvalConfig& cfg) {
  check_pair(ref, test, cfg);
  double sse = 0.0;
  std::size_t n = 0;
  for (int r = cfg.border; r < ref.height() - cfg.border; ++r) {
    for (int c = cfg.border; c < ref.width() - cfg.border; ++c) {
      const double d = ref(r, c) - test(r, c);
      sse += d * d;
      ++n;
    }
  }
  if (sse == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sse / static_cast<double>(n);
  return 10.0 * std::log10(cfg.peak * cfg.peak / mse);
}

double ssim(const Frame& ref, const Frame& test, const EvalConfig& cfg) {
  check_pair(ref, test, cfg);
  const int rows = ref.height() - 2 * cfg.border;
  const int cols = ref.width() - 2 * cfg.border;
  if (rows < cfg.ssim_window || cols < cfg.ssim_window) {
    throw ConfigError("interior " + dims(cols, rows) + " is smaller than the ssim window");
  }

  // Second moments are taken about a fixed offset to limit cancellation.
  const double offset = cfg.peak / 2.0;
  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const auto i = static_cast<std::size_t>(r * cols + c);
      const double a = ref(r + cfg.border, c + cfg.border) - offset;
      const double b = test(r + cfg.border, c + cfg.border) - offset;
      x[i] = a;
      y[i] = b;
      xx[i] = a * a;
      yy[i] = b * b;
      xy[i] = a * b;
    }
  }
  const auto taps = gaussian_taps(cfg.ssim_window, cfg.ssim_sigma);
  const auto mx = filter_valid(x, rows, cols, taps);
  const auto my = filter_valid(y, rows, cols, taps);
  const auto mxx = filter_valid(xx, rows, cols, taps);
  const auto myy = filter_valid(yy, rows, cols, taps);
  const auto mxy = filter_valid(xy, rows, cols, taps);

  const double c1 = (cfg.k1 * cfg.peak) * (cfg.k1 * cfg.peak);
  const double c2 = (cfg.k2 * cfg.peak) * (cfg.k2 * cfg.peak);
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = mxx[i] - mx[i] * mx[i];
    const double vy = myy[i] - my[i] * my[i];
    const double cov = mxy[i] - mx[i] * my[i];
    const double ux = mx[i] + offset, uy = my[i] + offset;
    total += ((2.0 * ux * uy + c1) * (2.0 * cov + c2)) /
             ((ux * ux + uy * uy + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

SequenceSummary sequence_summary(const std::vector<FrameScore>& per_frame) {
  if (per_frame.empty()) throw Error("sequence summary of an empty list");
  SequenceSummary s;
  s.frames = per_frame.size();
  double psnr_sum = 0.0, ssim_sum = 0.0;
  std::size_t finite = 0;
  for (const auto& f : per_frame) {
    ssim_sum += f.ssim;
    if (std::isinf(f.psnr)) {
      ++s.infinite_psnr;
    } else {
      psnr_sum += f.psnr;
      ++finite;
    }
  }
  s.mean_psnr = finite > 0 ? psnr_sum / static_cast<double>(finite)
                           : std::numeric_limits<double>::infinity();
  s.mean_ssim = ssim_sum / static_cast<double>(per_frame.size());
  return s;
}

}  // namespace qsv
