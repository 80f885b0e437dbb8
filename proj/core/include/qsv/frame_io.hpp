#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qsv/frame.hpp"

namespace qsv::io {

inline constexpr std::string_view kDefaultPattern = "frame%04d.pgm";

// Binary PGM (P5) with maxval 255 is the only supported container.
Frame read_frame(const std::filesystem::path& path, int t = 0);
void write_frame(const Frame& frame, const std::filesystem::path& path);

/// Rounds half away from zero and clamps to [0, 255].
std::uint8_t quantize(double value);

/// Expands a printf-style pattern holding a single `%d` / `%0Nd` field.
std::string format_name(std::string_view pattern, int index);

/// Loads files named by `pattern` with consecutive indices starting at 0.
/// A missing index before the last file found is an error, as is a frame
/// whose dimensions differ from frame 0.
std::vector<Frame> read_sequence(const std::filesystem::path& dir,
                                 std::string_view pattern = kDefaultPattern);
void write_sequence(const std::vector<Frame>& frames, const std::filesystem::path& dir,
                    std::string_view pattern = kDefaultPattern);

// Masks share the container: byte 255 <=> 1, byte 0 <=> 0.
Mask read_mask(const std::filesystem::path& path);
void write_mask(const Mask& mask, const std::filesystem::path& path);

}  // namespace qsv::io
