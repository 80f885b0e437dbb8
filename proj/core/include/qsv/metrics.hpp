#pragma once

#include <cstddef>
#include <vector>

#include "qsv/frame.hpp"

namespace qsv {

struct EvalConfig {
  int border = 40;
  double peak = 255.0;
  int ssim_window = 11;
  double ssim_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;

  /// Throws unless 2 * border < min(width, height).
  void validate(int width, int height) const;
};

/// PSNR in dB over the interior (border excluded). Identical interiors give
/// +infinity.
double psnr(const Frame& ref, const Frame& test, const EvalConfig& cfg = {});

/// Mean SSIM over all Gaussian windows lying fully inside the interior.
double ssim(const Frame& ref, const Frame& test, const EvalConfig& cfg = {});

struct FrameScore {
  double psnr = 0.0;
  double ssim = 0.0;
};

struct SequenceSummary {
  double mean_psnr = 0.0;  // finite entries only
  double mean_ssim = 0.0;
  std::size_t frames = 0;
  std::size_t infinite_psnr = 0;  // entries left out of mean_psnr
};

SequenceSummary sequence_summary(const std::vector<FrameScore>& per_frame);

}  // namespace qsv
