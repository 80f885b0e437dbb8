#pragma once

// Brute-force references and synthetic fixtures for the test suites.
// Nothing here calls into the algorithms it is used to check; only the
// plain data types (Frame, Mask, SampledFrame) are shared.

#include <cstdint>
#include <optional>
#include <vector>

#include "qsv/frame.hpp"

namespace qsv::oracle {

struct Match {
  Vec2 v;
  double cost = 0.0;
};

/// Exhaustive template match of pixel p: every v in [-S, S]^2 with p + v in
/// the frame, mean absolute difference over measured window pixels q with
/// q + v in the frame, at least min_support of them. Ties: (|dy|+|dx|, dy, dx).
std::optional<Match> brute_force_match(const SampledFrame& current, const Frame& past, Position p,
                                       int search_range = 9, int template_radius = 4,
                                       int min_support = 8);

/// SSIM straight from the definition: for every window fully inside the
/// interior, Gaussian-weighted means, variances and covariance computed
/// directly, then averaged.
double direct_ssim(const Frame& ref, const Frame& test, int border = 40, int window = 11,
                   double sigma = 1.5, double peak = 255.0, double k1 = 0.01, double k2 = 0.03);

/// Sum of k real sinusoids whose frequencies lie on the L x L DFT grid
/// (hence are DFT basis pairs on every L x L area), rescaled to [0, 255].
Frame make_sparse_spectrum_image(int L, int k, std::uint64_t seed, int size = 64);

/// Smooth random texture: Gaussian-blurred white noise scaled to about
/// [20, 235] and rounded to integers.
Plane<double> texture(int width, int height, std::uint64_t seed, double blur_sigma = 1.3);

/// Frame t is a window of one large texture such that
/// frame_t(p) == frame_{t-1}(p + v) wherever both sides are defined.
std::vector<Frame> global_translation(int width, int height, int frames, Vec2 v,
                                      std::uint64_t seed);

/// All frames identical.
std::vector<Frame> static_texture(int width, int height, int frames, std::uint64_t seed);

/// A current/past pair related by the global motion v, except that a flat
/// square (side `size`, value `level`) is pasted over the past frame at
/// `corner`. Targets whose true match falls inside the square have no valid
/// correspondence.
struct OcclusionPair {
  Frame current;
  Frame past;
  Vec2 v;
  Position corner;
  int size = 0;
  bool occluded(Position past_position, int margin) const;
};
OcclusionPair occlusion_paste(int width, int height, Vec2 v, Position corner, int size,
                              std::uint64_t seed, double level = 128.0);

/// Independent quarter-sampling mask: one random quadrant per 2x2 block.
Mask random_quarter_mask(int width, int height, std::uint64_t seed);

SampledFrame sample(const Frame& frame, const Mask& mask);

}  // namespace qsv::oracle
