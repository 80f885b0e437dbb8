#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qsv/frame_io.hpp"

namespace qsv::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("invalid boolean '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    auto end = value.find(',', start);
    if (end == std::string_view::npos) end = value.size();
    auto item = trim(value.substr(start, end - start));
    if (item.empty()) throw ConfigError("empty list item in key '" + std::string(key) + "'");
    out.push_back(parse_number<int>(key, item));
    start = end + 1;
  }
  return out;
}

std::map<std::string, std::string> parse_key_values(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    std::string_view body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    kv[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
  }
  return kv;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void RunConfig::set(std::string_view key, std::string_view value) {
  auto i = [&] { return parse_number<int>(key, value); };
  auto d = [&] { return parse_number<double>(key, value); };

  if (key == "input_dir") input_dir = std::string(value);
  else if (key == "output_dir") output_dir = std::string(value);
  else if (key == "pattern") pattern = std::string(value);
  else if (key == "sequence") sequence = std::string(value);
  else if (key == "frames") frames = i();
  else if (key == "write_frames") write_frames = parse_bool(key, value);
  else if (key == "variant") variant = parse_variant(value);
  else if (key == "check") check.kind = parse_check_kind(value);
  else if (key == "mask") mask = std::string(value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "refs") refs = i();
  else if (key == "threads") threads = i();
  else if (key == "border") eval.border = i();
  else if (key == "fsr.block_size") fsr.block_size = i();
  else if (key == "fsr.border") fsr.border = i();
  else if (key == "fsr.iterations") fsr.iterations = i();
  else if (key == "fsr.spatial_decay") fsr.spatial_decay = d();
  else if (key == "fsr.freq_decay") fsr.freq_decay = d();
  else if (key == "fsr.compensation") fsr.compensation = d();
  else if (key == "fsr.projected_reliability") fsr.projected_reliability = d();
  else if (key == "motion.search_range") motion.search_range = i();
  else if (key == "motion.template_radius") motion.template_radius = i();
  else if (key == "motion.min_support") motion.min_support = i();
  else if (key == "motion.cost") motion.cost = parse_cost_metric(value);
  else if (key == "check.frmc_offsets") check.frmc_offsets = parse_int_list(key, value);
  else if (key == "check.nnc_threshold") check.nnc_threshold = i();
  else if (key == "eval.peak") eval.peak = d();
  else if (key == "eval.ssim_window") eval.ssim_window = i();
  else if (key == "eval.ssim_sigma") eval.ssim_sigma = d();
  else if (key == "eval.k1") eval.k1 = d();
  else if (key == "eval.k2") eval.k2 = d();
  else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

std::string RunConfig::to_text() const {
  std::ostringstream out;
  auto kv = [&](const char* k, const auto& v) { out << k << " = " << v << '\n'; };
  kv("input_dir", input_dir.string());
  kv("output_dir", output_dir.string());
  kv("pattern", pattern);
  kv("sequence", sequence_name());
  kv("frames", frames);
  kv("write_frames", write_frames ? "true" : "false");
  kv("variant", to_string(variant));
  kv("check", to_string(check.kind));
  kv("mask", mask);
  kv("seed", seed);
  kv("refs", refs);
  kv("threads", threads);
  kv("border", eval.border);
  kv("fsr.block_size", fsr.block_size);
  kv("fsr.border", fsr.border);
  kv("fsr.iterations", fsr.iterations);
  kv("fsr.spatial_decay", format_double(fsr.spatial_decay));
  kv("fsr.freq_decay", format_double(fsr.freq_decay));
  kv("fsr.compensation", format_double(fsr.compensation));
  kv("fsr.projected_reliability", format_double(fsr.projected_reliability));
  kv("motion.search_range", motion.search_range);
  kv("motion.template_radius", motion.template_radius);
  kv("motion.min_support", motion.min_support);
  kv("motion.cost", to_string(motion.cost));
  std::string offsets;
  for (std::size_t k = 0; k < check.frmc_offsets.size(); ++k) {
    if (k) offsets += ",";
    offsets += std::to_string(check.frmc_offsets[k]);
  }
  kv("check.frmc_offsets", offsets);
  kv("check.nnc_threshold", check.nnc_threshold);
  kv("eval.peak", format_double(eval.peak));
  kv("eval.ssim_window", eval.ssim_window);
  kv("eval.ssim_sigma", format_double(eval.ssim_sigma));
  kv("eval.k1", format_double(eval.k1));
  kv("eval.k2", format_double(eval.k2));
  return out.str();
}

std::string RunConfig::sequence_name() const {
  if (!sequence.empty()) return sequence;
  auto p = input_dir.lexically_normal();
  if (p.has_filename()) return p.filename().string();
  return p.parent_path().filename().string();
}

RunConfig parse_run_config(std::istream& in, RunConfig base) {
  for (const auto& [k, v] : parse_key_values(in, "config")) base.set(k, v);
  return base;
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  for (const auto& [k, v] : parse_key_values(in, path.string())) base.set(k, v);
  return base;
}

MaskSchedule resolve_mask(const RunConfig& cfg, int width, int height) {
  if (cfg.mask.rfind("file:", 0) == 0) {
    std::filesystem::path path = cfg.mask.substr(5);
    MaskSchedule schedule = path.extension() == ".pgm"
                                ? MaskSchedule::from_masks({io::read_mask(path)})
                                : read_schedule_manifest(path);
    if (schedule.width() != width || schedule.height() != height) {
      throw DimensionError("mask file is " + dims(schedule.width(), schedule.height()) +
                           " but frames are " + dims(width, height));
    }
    return schedule;
  }
  return generate_schedule(parse_mask_mode(cfg.mask), width, height, cfg.seed);
}

void write_schedule_manifest(const MaskSchedule& schedule, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "schedule.txt");
  if (!out) throw IoError("cannot write " + (dir / "schedule.txt").string());
  out << "# mask schedule\n";
  out << "mode = " << to_string(schedule.mode()) << '\n';
  out << "period = " << schedule.period() << '\n';
  out << "seed = " << schedule.seed() << '\n';
  out << "width = " << schedule.width() << '\n';
  out << "height = " << schedule.height() << '\n';
  for (int p = 0; p < schedule.period(); ++p) {
    const std::string name = "mask_" + std::to_string(p) + ".pgm";
    io::write_mask(schedule.masks()[static_cast<std::size_t>(p)], dir / name);
    out << "mask" << p << " = " << name << '\n';
  }
}

MaskSchedule read_schedule_manifest(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open mask schedule " + manifest.string());
  auto kv = parse_key_values(in, manifest.string());
  auto get = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError(manifest.string() + ": missing key '" + k + "'");
    return it->second;
  };
  const int period = parse_number<int>("period", get("period"));
  if (period < 1) throw ConfigError(manifest.string() + ": period must be >= 1");
  std::vector<Mask> masks;
  for (int p = 0; p < period; ++p) {
    masks.push_back(io::read_mask(manifest.parent_path() / get("mask" + std::to_string(p))));
  }
  return MaskSchedule::from_masks(std::move(masks), parse_mask_mode(get("mode")),
                                  parse_number<std::uint64_t>("seed", get("seed")));
}

}  // namespace qsv::cli
