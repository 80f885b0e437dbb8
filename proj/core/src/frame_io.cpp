#include "qsv/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <regex>

namespace qsv::io {
namespace {

struct PgmImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bytes;
};

class HeaderReader {
 public:
  HeaderReader(const std::vector<char>& buf, const std::filesystem::path& path)
      : buf_(buf), path_(path) {}

  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      char c = buf_[pos_];
      if (c == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_int(const char* field) {
    skip_space_and_comments();
    std::size_t start = pos_;
    while (pos_ < buf_.size() && std::isdigit(static_cast<unsigned char>(buf_[pos_]))) ++pos_;
    int value = 0;
    auto [ptr, ec] = std::from_chars(buf_.data() + start, buf_.data() + pos_, value);
    if (start == pos_ || ec != std::errc{}) {
      throw FormatError(path_.string() + ": malformed PGM header field '" + field + "'");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void end_header() {
    if (pos_ >= buf_.size() || !std::isspace(static_cast<unsigned char>(buf_[pos_]))) {
      throw FormatError(path_.string() + ": malformed PGM header field 'maxval'");
    }
    ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  const std::vector<char>& buf_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 2 || buf[0] != 'P' || buf[1] != '5') {
    throw FormatError(path.string() + ": unsupported PGM field 'magic' (only P5 is accepted)");
  }
  HeaderReader header(buf, path);
  header.advance(2);
  PgmImage img;
  img.width = header.read_int("width");
  img.height = header.read_int("height");
  int maxval = header.read_int("maxval");
  if (img.width <= 0) throw FormatError(path.string() + ": invalid PGM field 'width'");
  if (img.height <= 0) throw FormatError(path.string() + ": invalid PGM field 'height'");
  if (maxval != 255) {
    throw FormatError(path.string() + ": unsupported PGM field 'maxval' = " +
                      std::to_string(maxval) + " (expected 255)");
  }
  header.end_header();

  std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (buf.size() - header.pos() < n) {
    throw FormatError(path.string() + ": truncated PGM raster");
  }
  img.bytes.resize(n);
  std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(header.pos()), n,
              reinterpret_cast<char*>(img.bytes.data()));
  return img;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

// Splits "prefix%0Nd suffix" into a regex that captures the index.
struct NamePattern {
  std::string prefix;
  std::string suffix;
  int width = 0;  // minimum digits, zero padded
};

NamePattern parse_pattern(std::string_view pattern) {
  static const std::regex field(R"(%(0\d+)?d)");
  std::string pat(pattern);
  std::smatch m;
  if (!std::regex_search(pat, m, field)) {
    throw ConfigError("name pattern '" + pat + "' has no %d field");
  }
  NamePattern out{m.prefix().str(), m.suffix().str(), 0};
  if (m[1].matched) out.width = std::stoi(m[1].str());
  if (out.prefix.find('%') != std::string::npos || out.suffix.find('%') != std::string::npos) {
    throw ConfigError("name pattern '" + pat + "' must hold exactly one %d field");
  }
  return out;
}

std::regex pattern_regex(const NamePattern& p) {
  auto escape = [](const std::string& s) {
    static const std::regex special(R"([.^$|()\[\]{}*+?\\])");
    return std::regex_replace(s, special, R"(\$&)");
  };
  return std::regex(escape(p.prefix) + R"((\d+))" + escape(p.suffix));
}

}  // namespace

std::uint8_t quantize(double value) {
  double r = std::round(value);  // half away from zero
  if (!(r > 0.0)) return 0;
  if (r > 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

Frame read_frame(const std::filesystem::path& path, int t) {
  PgmImage img = read_pgm(path);
  std::vector<double> data(img.bytes.begin(), img.bytes.end());
  return Frame(img.width, img.height, std::move(data), t);
}

void write_frame(const Frame& frame, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(frame.values().size());
  std::transform(frame.values().begin(), frame.values().end(), bytes.begin(), quantize);
  write_pgm(path, frame.width(), frame.height(), bytes);
}

std::string format_name(std::string_view pattern, int index) {
  if (index < 0) throw ConfigError("negative frame index in file name");
  const NamePattern p = parse_pattern(pattern);
  std::string digits = std::to_string(index);
  if (static_cast<int>(digits.size()) < p.width) {
    digits.insert(0, static_cast<std::size_t>(p.width) - digits.size(), '0');
  }
  return p.prefix + digits + p.suffix;
}

std::vector<Frame> read_sequence(const std::filesystem::path& dir, std::string_view pattern) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("not a directory: " + dir.string());
  }
  std::regex re = pattern_regex(parse_pattern(pattern));
  std::map<int, std::filesystem::path> found;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, re)) found[std::stoi(m[1].str())] = entry.path();
  }
  if (found.empty()) {
    throw IoError("no files matching '" + std::string(pattern) + "' in " + dir.string());
  }

  std::vector<Frame> frames;
  int expected = 0;
  for (const auto& [index, path] : found) {
    if (index != expected) {
      throw IoError("sequence gap in " + dir.string() + ": " + format_name(pattern, expected) +
                    " is missing");
    }
    Frame f = read_frame(path, index);
    if (!frames.empty() && !f.pixels().same_shape(frames.front().pixels())) {
      throw DimensionError(path.string() + " is " + dims(f.width(), f.height()) +
                           ", expected " +
                           dims(frames.front().width(), frames.front().height()));
    }
    frames.push_back(std::move(f));
    ++expected;
  }
  return frames;
}

void write_sequence(const std::vector<Frame>& frames, const std::filesystem::path& dir,
                    std::string_view pattern) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    write_frame(frames[i], dir / format_name(pattern, static_cast<int>(i)));
  }
}

Mask read_mask(const std::filesystem::path& path) {
  PgmImage img = read_pgm(path);
  std::vector<std::uint8_t> bits(img.bytes.size());
  for (std::size_t i = 0; i < img.bytes.size(); ++i) {
    if (img.bytes[i] == 255) {
      bits[i] = 1;
    } else if (img.bytes[i] == 0) {
      bits[i] = 0;
    } else {
      throw FormatError(path.string() + ": mask byte " + std::to_string(img.bytes[i]) +
                        " at index " + std::to_string(i) + " is neither 0 nor 255");
    }
  }
  return Mask(img.width, img.height, std::move(bits));
}

void write_mask(const Mask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(mask.bits().size());
  std::transform(mask.bits().values().begin(), mask.bits().values().end(), bytes.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
  write_pgm(path, mask.width(), mask.height(), bytes);
}

}  // namespace qsv::io
