#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <regex>

#include "cli/commands.hpp"

namespace {

using namespace qsv;
using namespace qsv::cli;

std::pair<int, int> parse_size(const std::string& text) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ConfigError("size must look like WIDTHxHEIGHT, got '" + text + "'");
  return {std::stoi(m[1].str()), std::stoi(m[2].str())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive reconstruction of quarter-sampled video"};
  app.require_subcommand(1);

  // mask
  auto* mask = app.add_subcommand("mask", "Generate a fixed or dynamic quarter-sampling mask schedule");
  std::string mask_mode = "dynamic", mask_size;
  MaskOptions mask_opts;
  mask->add_option("--mode", mask_mode, "fixed | dynamic")->check(CLI::IsMember({"fixed", "dynamic"}));
  mask->add_option("--size", mask_size, "WIDTHxHEIGHT")->required();
  mask->add_option("--seed", mask_opts.seed, "Generator seed");
  mask->add_option("--out", mask_opts.out, "Output directory");

  // sample
  auto* sample = app.add_subcommand("sample", "Simulate the sensor: write masked frames");
  SampleOptions sample_opts;
  sample->add_option("--input", sample_opts.input, "Directory of ground-truth frames")->required();
  sample->add_option("--out", sample_opts.out, "Output directory")->required();
  sample->add_option("--pattern", sample_opts.pattern, "Frame name pattern");
  sample->add_option("--mask", sample_opts.mask, "fixed | dynamic | file:<path>");
  sample->add_option("--seed", sample_opts.seed, "Mask seed");

  // run
  auto* run = app.add_subcommand("run", "Reconstruct a sequence and write a report");
  std::string config_path, input, output, pattern, variant, check, mask_spec, mask_in, sequence;
  std::uint64_t seed = 0;
  int refs = 0, threads = 0, border = 0, frames = 0, iterations = 0;
  bool no_frames = false;
  run->add_option("--config", config_path, "Flat key = value configuration file");
  run->add_option("--input", input, "Directory of ground-truth frames");
  run->add_option("--output", output, "Output directory");
  run->add_option("--pattern", pattern, "Frame name pattern");
  run->add_option("--sequence", sequence, "Sequence name used in reports");
  run->add_option("--frames", frames, "Number of frames to use (0 = all)");
  run->add_option("--variant", variant, "single_fsr | rfsr | dfsr")
      ->check(CLI::IsMember({"single_fsr", "rfsr", "dfsr"}));
  run->add_option("--check", check, "none | rme | rmc | frmc | nnc_frmc")
      ->check(CLI::IsMember({"none", "rme", "rmc", "frmc", "nnc_frmc"}));
  auto* mask_opt = run->add_option("--mask", mask_spec, "fixed | dynamic | file:<path>");
  run->add_option("--mask-in", mask_in, "Schedule manifest; same as --mask file:<path>")->excludes(mask_opt);
  run->add_option("--refs", refs, "Number of past frames");
  run->add_option("--seed", seed, "Mask seed");
  run->add_option("--threads", threads, "Worker threads");
  run->add_option("--border", border, "Evaluation border in pixels");
  run->add_option("--iterations", iterations, "FSR iterations per block");
  run->add_flag("--no-frames", no_frames, "Do not write reconstructed frames");

  // compare
  auto* compare = app.add_subcommand("compare", "Tabulate several run reports");
  CompareOptions compare_opts;
  std::string compare_out;
  compare->add_option("reports", compare_opts.reports, "report.txt files")->required()->expected(2, -1);
  compare->add_option("--baseline", compare_opts.baseline, "Index of the baseline report");
  compare->add_option("--out", compare_out, "Write the table to a file instead of stdout");

  // eval
  auto* eval = app.add_subcommand("eval", "PSNR/SSIM between two frame directories");
  EvalOptions eval_opts;
  eval->add_option("--ref", eval_opts.reference, "Reference frames")->required();
  eval->add_option("--test", eval_opts.test, "Test frames")->required();
  eval->add_option("--pattern", eval_opts.pattern, "Frame name pattern");
  eval->add_option("--border", eval_opts.eval.border, "Border in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*mask) {
      mask_opts.mode = parse_mask_mode(mask_mode);
      std::tie(mask_opts.width, mask_opts.height) = parse_size(mask_size);
      auto schedule = cmd_mask(mask_opts);
      std::cout << "wrote " << schedule.period() << " mask(s) to " << mask_opts.out.string() << '\n';
    } else if (*sample) {
      cmd_sample(sample_opts);
    } else if (*run) {
      RunConfig cfg;
      if (!config_path.empty()) cfg = load_run_config(config_path);
      auto given = [&](const char* name) { return run->count(name) > 0; };
      if (given("--input")) cfg.input_dir = input;
      if (given("--output")) cfg.output_dir = output;
      if (given("--pattern")) cfg.set("pattern", pattern);
      if (given("--sequence")) cfg.set("sequence", sequence);
      if (given("--frames")) cfg.frames = frames;
      if (given("--variant")) cfg.set("variant", variant);
      if (given("--check")) cfg.set("check", check);
      if (given("--mask")) cfg.set("mask", mask_spec);
      if (given("--mask-in")) cfg.set("mask", "file:" + mask_in);
      if (given("--refs")) cfg.refs = refs;
      if (given("--seed")) cfg.seed = seed;
      if (given("--threads")) cfg.threads = threads;
      if (given("--border")) cfg.eval.border = border;
      if (given("--iterations")) cfg.fsr.iterations = iterations;
      if (no_frames) cfg.write_frames = false;
      cmd_run(cfg, std::cerr);
      std::cout << (cfg.output_dir / "report.txt").string() << '\n';
    } else if (*compare) {
      if (compare_out.empty()) {
        cmd_compare(compare_opts, std::cout);
      } else {
        std::ofstream out(compare_out);
        if (!out) throw IoError("cannot write " + compare_out);
        cmd_compare(compare_opts, out);
      }
    } else if (*eval) {
      cmd_eval(eval_opts, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kOk;
}
