#include "qsv/mask.hpp"

#include <algorithm>
#include <array>

namespace qsv {
namespace {

void require_even(int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 != 0 || height % 2 != 0) {
    throw DimensionError("quarter-sampling masks need positive even dimensions, got " +
                         dims(width, height));
  }
}

std::array<int, 4> nth_permutation(unsigned n) {
  std::array<int, 4> perm{0, 1, 2, 3};
  for (unsigned i = 0; i < n; ++i) std::next_permutation(perm.begin(), perm.end());
  return perm;
}

}  // namespace

std::string_view to_string(MaskMode mode) {
  switch (mode) {
    case MaskMode::fixed: return "fixed";
    case MaskMode::dynamic: return "dynamic";
    case MaskMode::external: return "external";
  }
  return "?";
}

MaskMode parse_mask_mode(std::string_view text) {
  if (text == "fixed") return MaskMode::fixed;
  if (text == "dynamic") return MaskMode::dynamic;
  if (text == "external") return MaskMode::external;
  throw ConfigError("unknown mask mode '" + std::string(text) + "'");
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t block_hash(std::uint64_t seed, std::uint32_t block_row, std::uint32_t block_col) {
  std::uint64_t key = (static_cast<std::uint64_t>(block_row) << 32) | block_col;
  return splitmix64(seed ^ splitmix64(key));
}

MaskSchedule MaskSchedule::from_masks(std::vector<Mask> masks, MaskMode mode,
                                      std::uint64_t seed) {
  if (masks.empty()) throw ConfigError("mask schedule needs at least one mask");
  for (const auto& m : masks) {
    if (!m.bits().same_shape(masks.front().bits())) {
      throw DimensionError("mask schedule entries differ in size");
    }
    if (!is_quarter_sampled(m)) {
      throw ConfigError("mask does not sample exactly one pixel per 2x2 block");
    }
  }
  return MaskSchedule(mode, std::move(masks), seed);
}

const Mask& MaskSchedule::mask_for(int t) const {
  if (masks_.empty()) throw ConfigError("empty mask schedule");
  if (t < 0) throw DimensionError("negative frame index");
  return masks_[static_cast<std::size_t>(t % period())];
}

MaskSchedule generate_fixed_mask(int width, int height, std::uint64_t seed) {
  require_even(width, height);
  Mask mask(width, height);
  for (int br = 0; br < height / 2; ++br) {
    for (int bc = 0; bc < width / 2; ++bc) {
      auto quadrant = static_cast<int>(block_hash(seed, br, bc) >> 62);
      mask.set(2 * br + quadrant / 2, 2 * bc + quadrant % 2, true);
    }
  }
  return MaskSchedule(MaskMode::fixed, {std::move(mask)}, seed);
}

MaskSchedule generate_dynamic_mask(int width, int height, std::uint64_t seed) {
  require_even(width, height);
  std::vector<Mask> masks(4, Mask(width, height));
  for (int br = 0; br < height / 2; ++br) {
    for (int bc = 0; bc < width / 2; ++bc) {
      auto perm = nth_permutation(static_cast<unsigned>(block_hash(seed, br, bc) % 24));
      for (int phase = 0; phase < 4; ++phase) {
        int q = perm[static_cast<std::size_t>(phase)];
        masks[static_cast<std::size_t>(phase)].set(2 * br + q / 2, 2 * bc + q % 2, true);
      }
    }
  }
  return MaskSchedule(MaskMode::dynamic, std::move(masks), seed);
}

MaskSchedule generate_schedule(MaskMode mode, int width, int height, std::uint64_t seed) {
  switch (mode) {
    case MaskMode::fixed: return generate_fixed_mask(width, height, seed);
    case MaskMode::dynamic: return generate_dynamic_mask(width, height, seed);
    case MaskMode::external: break;
  }
  throw ConfigError("external mask schedules are loaded, not generated");
}

SampledFrame apply_mask(const Frame& frame, const Mask& mask) {
  if (!frame.pixels().same_shape(mask.bits())) {
    throw DimensionError("frame " + dims(frame.width(), frame.height()) + " vs mask " +
                         dims(mask.width(), mask.height()));
  }
  std::vector<double> out(frame.values().size());
  const auto& bits = mask.bits().values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = bits[i] ? frame.values()[i] : 0.0;
  return SampledFrame(Frame(frame.width(), frame.height(), std::move(out), frame.t()), mask);
}

bool is_quarter_sampled(const Mask& mask) {
  if (mask.width() % 2 != 0 || mask.height() % 2 != 0) return false;
  for (int r = 0; r < mask.height(); r += 2) {
    for (int c = 0; c < mask.width(); c += 2) {
      int n = mask(r, c) + mask(r, c + 1) + mask(r + 1, c) + mask(r + 1, c + 1);
      if (n != 1) return false;
    }
  }
  return true;
}

}  // namespace qsv
