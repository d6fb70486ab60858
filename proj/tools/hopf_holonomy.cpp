// hopf_holonomy run <spec.json> [--steps N] [--method M] [--trace out.csv] [--report out.json]
// hopf_holonomy run --batch <dir> [--out <dir>] [--steps N] [--method M]

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hopf/experiment.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) hopf::fail_validation("cannot read " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Overrides {
  int steps = 0;
  std::string method;
};

void apply(hopf::ExperimentSpec& spec, const Overrides& o) {
  if (o.steps > 0) spec.integrator.N = o.steps;
  if (!o.method.empty()) spec.integrator.method = hopf::parse_method(o.method);
}

int run_single(const fs::path& spec_path, const Overrides& o, const std::string& trace, const std::string& report) {
  try {
    hopf::ExperimentSpec spec = hopf::parse_spec(slurp(spec_path));
    apply(spec, o);
    if (!trace.empty()) spec.output.trace = trace;
    if (!report.empty()) spec.output.report = report;
    const hopf::RunResult r = hopf::run_and_write(spec);
    if (!spec.output.report) std::cout << hopf::dump_report(r.report_json);
    if (r.exit_code() != 0)
      std::cerr << "hopf_holonomy: closed-form and generic lifts disagree (|difference| > "
                << hopf::kConsistencyTolerance << ")\n";
    return r.exit_code();
  } catch (const hopf::Error& e) {
    std::cerr << "hopf_holonomy: " << e.what() << "\n";
    return e.exit_code();
  }
}

int run_batch(const fs::path& dir, const fs::path& out, const Overrides& o) {
  if (!fs::is_directory(dir)) {
    std::cerr << "hopf_holonomy: not a directory: " << dir << "\n";
    return 1;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  // Unparseable specs still get a row; they are kept out of the worker pool.
  std::vector<hopf::ExperimentSpec> specs;
  std::vector<std::optional<hopf::BatchRow>> early(files.size());
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const std::string stem = files[i].stem().string();
    try {
      hopf::ExperimentSpec spec = hopf::parse_spec(slurp(files[i]));
      apply(spec, o);
      if (spec.id.empty()) spec.id = stem;
      if (!out.empty()) {
        spec.output.report = (out / (spec.id + ".report.json")).string();
        if (spec.output.trace) spec.output.trace = (out / fs::path(*spec.output.trace).filename()).string();
      }
      specs.push_back(std::move(spec));
      slot.push_back(i);
    } catch (const hopf::Error& e) {
      early[i] = hopf::BatchRow{stem, std::nullopt, hopf::error_status(e), e.exit_code(), e.what(), std::nullopt};
    }
  }

  std::vector<hopf::BatchRow> computed = hopf::batch(specs);
  std::vector<hopf::BatchRow> rows(files.size());
  for (std::size_t k = 0; k < slot.size(); ++k) rows[slot[k]] = std::move(computed[k]);
  for (std::size_t i = 0; i < files.size(); ++i)
    if (early[i]) rows[i] = std::move(*early[i]);

  int worst = 0;
  for (const auto& r : rows) {
    if (!r.diagnostic.empty()) std::cerr << "hopf_holonomy: " << r.id << ": " << r.diagnostic << "\n";
    worst = std::max(worst, r.exit_code);
  }
  const std::string csv = hopf::summary_csv(rows);
  std::cout << csv;
  if (!out.empty()) {
    try {
      hopf::write_file_atomic(out / "summary.csv", csv);
    } catch (const std::exception& e) {
      std::cerr << "hopf_holonomy: " << e.what() << "\n";
      worst = std::max(worst, 1);
    }
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy of horizontal lifts over totally geodesic surfaces"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run one spec or a directory of specs");
  std::string spec_path, batch_dir, out_dir, trace, report;
  Overrides o;
  run->add_option("spec", spec_path, "experiment spec (JSON)");
  run->add_option("--batch", batch_dir, "run every *.json spec in a directory");
  run->add_option("--out", out_dir, "batch output directory (per-spec reports and summary.csv)");
  run->add_option("--steps", o.steps, "integration steps N")->check(CLI::PositiveNumber);
  run->add_option("--method", o.method, "closed_form | generic | both")
      ->check(CLI::IsMember({"closed_form", "generic", "both"}));
  run->add_option("--trace", trace, "write the lift trace CSV here");
  run->add_option("--report", report, "write the report JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (spec_path.empty() == batch_dir.empty()) {
    std::cerr << "hopf_holonomy: give exactly one of <spec> or --batch <dir>\n";
    return 1;
  }
  if (!batch_dir.empty()) return run_batch(batch_dir, out_dir, o);
  return run_single(spec_path, o, trace, report);
}
