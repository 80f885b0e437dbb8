#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsv/frame.hpp"

namespace qsv {

enum class MaskMode { fixed, dynamic, external };

std::string_view to_string(MaskMode mode);
MaskMode parse_mask_mode(std::string_view text);

/// Periodic sequence of sampling masks; frame t is sampled with
/// masks[t mod period].
class MaskSchedule {
 public:
  MaskSchedule() = default;

  /// Wraps externally supplied masks. Each must sample exactly one pixel per
  /// 2x2 block; the period equals the number of masks.
  static MaskSchedule from_masks(std::vector<Mask> masks, MaskMode mode = MaskMode::external,
                                 std::uint64_t seed = 0);

  MaskMode mode() const { return mode_; }
  int period() const { return static_cast<int>(masks_.size()); }
  std::uint64_t seed() const { return seed_; }
  int width() const { return masks_.empty() ? 0 : masks_.front().width(); }
  int height() const { return masks_.empty() ? 0 : masks_.front().height(); }
  const std::vector<Mask>& masks() const { return masks_; }
  const Mask& mask_for(int t) const;

 private:
  MaskSchedule(MaskMode mode, std::vector<Mask> masks, std::uint64_t seed)
      : mode_(mode), masks_(std::move(masks)), seed_(seed) {}

  friend MaskSchedule generate_fixed_mask(int, int, std::uint64_t);
  friend MaskSchedule generate_dynamic_mask(int, int, std::uint64_t);

  MaskMode mode_ = MaskMode::fixed;
  std::vector<Mask> masks_;
  std::uint64_t seed_ = 0;
};

/// SplitMix64 finalizer. Block (r, c) draws from
/// block_hash(seed, r, c) = mix(seed ^ mix((r << 32) | c)).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t block_hash(std::uint64_t seed, std::uint32_t block_row, std::uint32_t block_col);

/// One measured quadrant per 2x2 block, chosen by the top two bits of the
/// block hash. Quadrant q maps to offset (q / 2, q % 2).
MaskSchedule generate_fixed_mask(int width, int height, std::uint64_t seed);

/// Period-4 schedule; each block reads its quadrants in the order given by
/// permutation number (block hash mod 24) in lexicographic order.
MaskSchedule generate_dynamic_mask(int width, int height, std::uint64_t seed);

MaskSchedule generate_schedule(MaskMode mode, int width, int height, std::uint64_t seed);

/// Sensor simulation: value where the mask is 1, zero elsewhere.
SampledFrame apply_mask(const Frame& frame, const Mask& mask);

/// True iff every full 2x2 block holds exactly one set bit.
bool is_quarter_sampled(const Mask& mask);

}  // namespace qsv
