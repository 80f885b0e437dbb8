#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qsv/frame.hpp"
#include "qsv/motion.hpp"

namespace qsv {

enum class CheckKind { none, rme, rmc, frmc, nnc_frmc };

std::string_view to_string(CheckKind kind);
CheckKind parse_check_kind(std::string_view text);

struct CheckMode {
  CheckKind kind = CheckKind::nnc_frmc;
  std::vector<int> frmc_offsets{-7, -3, -1, 0, 1, 3, 7};
  int nnc_threshold = 1;

  void validate(const MotionParams& motion) const;
};

/// Counters accumulated by the checks. reverse_evaluations counts calls of
/// the reverse matching cost; the NNC stage never adds to it.
struct CheckStats {
  std::uint64_t checked = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t reverse_evaluations = 0;
  std::uint64_t nnc_rejected = 0;

  CheckStats& operator+=(const CheckStats& o);
  double acceptance_rate() const {
    return checked == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(checked);
  }
};

/// 3x3 component-wise median of the valid vectors around each valid entry
/// (lower median for even counts). Undefined where the entry is invalid.
class FilteredField {
 public:
  FilteredField() = default;
  FilteredField(int width, int height) : values_(width, height) {}

  const std::optional<Vec2>& operator[](Position p) const { return values_[p]; }
  std::optional<Vec2>& operator[](Position p) { return values_[p]; }
  bool contains(Position p) const { return values_.contains(p); }
  int width() const { return values_.width(); }
  int height() const { return values_.height(); }

 private:
  Plane<std::optional<Vec2>> values_;
};

FilteredField median_filter_field(const MotionField& field);

/// Reverse motion estimation: a full search from p + v back into the
/// current frame must land on -v.
MotionField check_rme(const MotionField& field, const SampledFrame& current, const Frame& past,
                      const MotionParams& params, CheckStats* stats = nullptr, int threads = 1);

/// Reverse motion check: reverse costs on the full (2S+1)^2 grid centred on
/// -v; the zero offset must win.
MotionField check_rmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                      const MotionParams& params, CheckStats* stats = nullptr, int threads = 1);

/// Fast reverse motion check on the offsets x offsets grid centred on -v.
MotionField check_frmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                       const MotionParams& params, const std::vector<int>& offsets,
                       CheckStats* stats = nullptr, int threads = 1);

/// Nearest neighbour check on the median-filtered field: the filtered vector
/// of each entry may differ from each of its four neighbours' filtered
/// vectors by at most `threshold` in L1 norm. Missing neighbours are skipped.
MotionField check_nnc(const MotionField& field, int threshold, CheckStats* stats = nullptr);

/// NNC first; survivors are re-validated by FRMC.
MotionField check_nnc_frmc(const MotionField& field, const SampledFrame& current, const Frame& past,
                           const MotionParams& params, const std::vector<int>& offsets,
                           int threshold, CheckStats* stats = nullptr, int threads = 1);

/// Dispatches on mode.kind. `none` accepts every valid entry.
MotionField apply_check(const MotionField& field, const SampledFrame& current, const Frame& past,
                        const MotionParams& params, const CheckMode& mode,
                        CheckStats* stats = nullptr, int threads = 1);

}  // namespace qsv
