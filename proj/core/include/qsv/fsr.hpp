#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsv/frame.hpp"
#include "qsv/projection.hpp"

namespace qsv {

/// Frequency selective reconstruction parameters. Each block of
/// block_size x block_size pixels is modelled from an area of
/// area() = block_size + 2 * border pixels per side centred on it.
struct FsrParams {
  int block_size = 4;
  int border = 14;
  int iterations = 100;
  double spatial_decay = 0.7;     // rho
  double freq_decay = 0.975;      // rho_f
  double compensation = 0.5;      // gamma
  double projected_reliability = 1.0;  // kappa, weight factor for projected pixels

  int area() const { return block_size + 2 * border; }
  void validate() const;
};

/// Values and reliability weights of one L x L processing area.
struct SupportArea {
  int size = 0;
  std::vector<double> values;
  std::vector<double> weights;  // 0 marks a position without information
};

/// Optional per-iteration record of model generation.
struct BlockModelTrace {
  struct Step {
    int freq_row = 0;
    int freq_col = 0;
    double residual_energy = 0.0;  // sum of w * (f - g)^2 after this step
  };
  double initial_energy = 0.0;
  std::vector<Step> steps;
};

/// Spatial weights rho^dist from the area centre ((L-1)/2, (L-1)/2) at
/// measured or projected positions, 0 elsewhere. Projected-only positions
/// are scaled by params.projected_reliability; measured wins on overlap.
std::vector<double> make_weight(const std::vector<std::uint8_t>& measured,
                                const std::vector<std::uint8_t>& projected, int size,
                                const FsrParams& params);

/// Frequency prior rho_f^|k| over the centred frequency index.
std::vector<double> frequency_prior(int size, double freq_decay);

/// Greedy sparse model of the support in the basis of 2D DFT functions on
/// the area. Each iteration picks the frequency maximising
/// prior(k) * |R_w(k)|^2, where R_w is the spectrum of the weighted
/// residual, adds gamma * R_w(k) / sum(w) to its coefficient (and the
/// conjugate coefficient for the mirrored frequency) and updates R_w in the
/// spectral domain. Ties go to the lowest row-major frequency index.
/// Throws Error("empty support") when all weights are zero.
std::vector<double> build_block_model(const SupportArea& support, const FsrParams& params,
                                      BlockModelTrace* trace = nullptr);

struct BlockIndex {
  int row = 0;  // block row, in units of block_size
  int col = 0;
};

std::vector<BlockIndex> block_grid(int width, int height, const FsrParams& params);

/// Model values for the core pixels of one block, row-major, clipped at the
/// frame edge. Only the measurements and projections inside the block's
/// processing area are used; a block with no support yields zeros.
std::vector<double> reconstruct_block(const SampledFrame& sampled,
                                      const ProjectionOverlay* projected,
                                      const FsrParams& params, BlockIndex block);

/// Full-frame reconstruction. Measured pixels keep their values. Pixels
/// covered only by a projection take the projected value when
/// overwrite_projected is set and the model value otherwise. Model values
/// are clamped to [0, 255].
Frame reconstruct_frame(const SampledFrame& sampled, const ProjectionBuffer* projected,
                        const FsrParams& params, bool overwrite_projected, int threads = 1);

}  // namespace qsv
