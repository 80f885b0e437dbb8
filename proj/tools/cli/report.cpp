#include "report.hpp"

#include <fstream>
#include <sstream>

#include "run_config.hpp"

namespace qsv::cli {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& origin) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(origin + ": invalid number '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s, const std::string& origin) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw FormatError(origin + ": invalid count '" + s + "'");
  }
}

}  // namespace

std::string RunReport::get(const std::string& key) const {
  auto it = config.find(key);
  return it == config.end() ? std::string{} : it->second;
}

void write_report(const RunReport& r, std::ostream& out) {
  out << "# recursive quarter-sampling reconstruction report\n";
  out << "[config]\n";
  for (const auto& [k, v] : r.config) out << k << " = " << v << '\n';

  out << "[summary]\n";
  out << "frames = " << r.summary.frames << '\n';
  out << "psnr_mean = " << format_double(r.summary.mean_psnr) << '\n';
  out << "ssim_mean = " << format_double(r.summary.mean_ssim) << '\n';
  out << "psnr_infinite = " << r.summary.infinite_psnr << '\n';

  out << "[timings]\n";
  out << "ME,CC,FSR,Total\n";
  out << format_double(r.timings.me) << ',' << format_double(r.timings.cc) << ','
      << format_double(r.timings.fsr) << ',' << format_double(r.timings.total) << '\n';

  out << "[checks]\n";
  out << "checked,accepted,rejected,nnc_rejected,reverse_evaluations,evaluations_per_checked,"
         "acceptance_rate\n";
  const auto& c = r.checks;
  const double per = c.checked ? static_cast<double>(c.reverse_evaluations) / static_cast<double>(c.checked) : 0.0;
  out << c.checked << ',' << c.accepted << ',' << c.rejected << ',' << c.nnc_rejected << ','
      << c.reverse_evaluations << ',' << format_double(per) << ','
      << format_double(c.acceptance_rate()) << '\n';

  out << "[frames]\n";
  out << "frame,psnr_db,ssim,references,candidates,accepted,projected\n";
  for (const auto& f : r.frames) {
    out << f.frame << ',' << format_double(f.psnr_db) << ',' << format_double(f.ssim) << ','
        << f.diag.references << ',' << f.diag.candidates << ',' << f.diag.accepted << ','
        << f.diag.projected << '\n';
  }
}

RunReport parse_report(std::istream& in, const std::string& origin) {
  RunReport r;
  std::string section, line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = line.substr(1, line.size() - 2);
      header_seen = false;
      continue;
    }
    if (section == "config" || section == "summary") {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw FormatError(origin + ": bad line '" + line + "'");
      auto key = line.substr(0, eq);
      auto value = line.substr(eq + 1);
      auto strip = [](std::string& s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
      };
      strip(key);
      strip(value);
      if (section == "config") {
        r.config[key] = value;
      } else if (key == "frames") {
        r.summary.frames = to_u64(value, origin);
      } else if (key == "psnr_mean") {
        r.summary.mean_psnr = to_double(value, origin);
      } else if (key == "ssim_mean") {
        r.summary.mean_ssim = to_double(value, origin);
      } else if (key == "psnr_infinite") {
        r.summary.infinite_psnr = to_u64(value, origin);
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto cells = split_csv(line);
    if (section == "timings" && cells.size() == 4) {
      r.timings = {to_double(cells[0], origin), to_double(cells[1], origin),
                   to_double(cells[2], origin), to_double(cells[3], origin)};
    } else if (section == "checks" && cells.size() >= 5) {
      r.checks.checked = to_u64(cells[0], origin);
      r.checks.accepted = to_u64(cells[1], origin);
      r.checks.rejected = to_u64(cells[2], origin);
      r.checks.nnc_rejected = to_u64(cells[3], origin);
      r.checks.reverse_evaluations = to_u64(cells[4], origin);
    } else if (section == "frames" && cells.size() == 7) {
      FrameRow f;
      f.frame = static_cast<int>(to_u64(cells[0], origin));
      f.psnr_db = to_double(cells[1], origin);
      f.ssim = to_double(cells[2], origin);
      f.diag.t = f.frame;
      f.diag.references = static_cast<int>(to_u64(cells[3], origin));
      f.diag.candidates = to_u64(cells[4], origin);
      f.diag.accepted = to_u64(cells[5], origin);
      f.diag.projected = to_u64(cells[6], origin);
      r.frames.push_back(f);
    } else {
      throw FormatError(origin + ": unexpected line in [" + section + "]: '" + line + "'");
    }
  }
  return r;
}

RunReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report " + path.string());
  return parse_report(in, path.string());
}

}  // namespace qsv::cli
