// vmdtex command-line front end.
#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <nlohmann/json.hpp>

#include "vmdtex/error.hpp"
#include "vmdtex/pipeline/commands.hpp"
#include "vmdtex/pipeline/config.hpp"

namespace fs = std::filesystem;
using vmdtex::pipeline::PipelineConfig;

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mag;
  std::optional<std::size_t> jobs;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required = true) {
  auto* c = cmd->add_option("--config", opts.config, "Pipeline TOML file");
  if (config_required) c->required();
  cmd->add_option("--seed", opts.seed, "Overrides the config seed");
  cmd->add_option("--mag", opts.mag, "Magnification scope: 40, 100, 200, 400 or all");
  cmd->add_option("--jobs", opts.jobs, "Worker threads (0 = all cores)");
}

PipelineConfig load(const CommonOptions& opts) {
  PipelineConfig cfg = vmdtex::pipeline::load_config(opts.config);
  if (opts.seed) cfg.seed = *opts.seed;
  if (opts.mag) cfg.experiment.magnification = vmdtex::pipeline::parse_magnification(*opts.mag);
  if (opts.jobs) cfg.jobs = *opts.jobs;
  cfg.finalize();
  return cfg;
}

int fail(const std::string& category, const std::string& kind, const std::string& message, int code) {
  nlohmann::json line{{"error", kind}, {"category", category}, {"message", message}, {"exit_code", code}};
  std::cerr << line.dump() << '\n';
  return code;
}

void print_path(const fs::path& p) { std::cout << p.string() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Texture classification of histopathology images with iterative VMD"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::optional<std::string> index_root, index_out;
  std::vector<std::string> images;
  std::string report_path;

  auto* index = app.add_subcommand("index", "Scan the dataset and write the manifest CSV");
  add_common(index, opts);
  index->add_option("--root", index_root, "Dataset root (overrides the config)");
  index->add_option("--out", index_out, "Manifest output path");
  auto* decompose = app.add_subcommand("decompose", "Write the VMD components of images");
  add_common(decompose, opts);
  decompose->add_option("images", images, "Image files")->required();
  auto* extract = app.add_subcommand("extract", "Compute feature vectors for indexed samples");
  add_common(extract, opts);
  auto* select = app.add_subcommand("select", "Rank and filter features");
  add_common(select, opts);
  auto* train = app.add_subcommand("train", "Fit the classifier on all samples in scope");
  add_common(train, opts);
  auto* evaluate = app.add_subcommand("evaluate", "Run the cross-validation or holdout experiment");
  add_common(evaluate, opts);
  auto* report = app.add_subcommand("report", "Print a report summary");
  add_common(report, opts, false);
  report->add_option("report", report_path, "Report JSON (default: <output_dir>/report.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("config", "BadArguments", e.what(), 2);
  }

  try {
    if (index->parsed()) {
      const auto cfg = load(opts);
      std::optional<fs::path> root, out;
      if (index_root) root = *index_root;
      if (index_out) out = *index_out;
      print_path(vmdtex::pipeline::cmd_index(cfg, root, out));
    } else if (decompose->parsed()) {
      const auto cfg = load(opts);
      std::vector<fs::path> paths(images.begin(), images.end());
      for (const auto& p : vmdtex::pipeline::cmd_decompose(cfg, paths)) print_path(p);
    } else if (extract->parsed()) {
      print_path(vmdtex::pipeline::cmd_extract(load(opts)));
    } else if (select->parsed()) {
      print_path(vmdtex::pipeline::cmd_select(load(opts)));
    } else if (train->parsed()) {
      print_path(vmdtex::pipeline::cmd_train(load(opts)));
    } else if (evaluate->parsed()) {
      print_path(vmdtex::pipeline::cmd_evaluate(load(opts)));
    } else if (report->parsed()) {
      fs::path path = report_path;
      if (path.empty()) {
        if (opts.config.empty()) return fail("config", "BadArguments", "report needs a path or --config", 2);
        path = vmdtex::pipeline::Artifacts{load(opts).output_dir}.report_json();
      }
      std::cout << vmdtex::pipeline::cmd_report(path);
    }
  } catch (const vmdtex::Error& e) {
    return fail(vmdtex::to_string(e.category()), e.kind(), e.what(), vmdtex::exit_code(e.category()));
  } catch (const fs::filesystem_error& e) {
    return fail("data", "FilesystemError", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("internal", "InternalError", e.what(), 1);
  }
  return 0;
}
