#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsv/consistency.hpp"
#include "qsv/metrics.hpp"
#include "qsv/pipeline.hpp"

namespace qsv::cli {

struct FrameRow {
  int frame = 0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  FrameDiagnostics diag;
};

/// Run report: sections [config], [summary], [timings], [checks], [frames].
/// The timing section is a one-row CSV with columns ME,CC,FSR,Total.
struct RunReport {
  std::map<std::string, std::string> config;
  SequenceSummary summary;
  StageTimings timings;
  CheckStats checks;
  std::vector<FrameRow> frames;

  std::string get(const std::string& key) const;
};

void write_report(const RunReport& report, std::ostream& out);
RunReport parse_report(std::istream& in, const std::string& origin = "report");
RunReport load_report(const std::filesystem::path& path);

}  // namespace qsv::cli
