#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcp/errors.hpp"
#include "rcp/gen.hpp"
#include "rcp/instance.hpp"
#include "rcp/pipeline.hpp"
#include "rcp/svg.hpp"

namespace {

using rcp::Backend;
using rcp::RunOptions;

void apply_env_tolerances(rcp::ToleranceOverrides& tols) {
  auto read = [](const char* name) -> std::optional<double> {
    const char* value = std::getenv(name);
    if (!value) return std::nullopt;
    try {
      return std::stod(value);
    } catch (...) {
      throw rcp::Error(std::string(name) + ": unparsable tolerance override");
    }
  };
  if (auto v = read("RCP_TOL_RANK")) tols.rank = v;
  if (auto v = read("RCP_TOL_BARY")) tols.bary = v;
  if (auto v = read("RCP_TOL_SOLVE")) tols.solve = v;
  if (auto v = read("RCP_TOL_FEAS")) tols.feas = v;
  if (auto v = read("RCP_TOL_GEO")) tols.geo = v;
  if (auto v = read("RCP_TOL_STRICT")) tols.strict = v;
  if (auto v = read("RCP_TOL_INDEP")) tols.indep = v;
  if (auto v = read("RCP_TOL_NONZERO")) tols.nonzero = v;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  // atomic per-file: write a sibling temp file, then rename into place
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw rcp::Error("cannot open output file: " + path);
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rcp::Error("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw rcp::SchemaError(path + ": " + e.what());
  }
  return j;
}

struct BatchRow {
  std::string instance;
  std::string case_tag = "-";
  std::string verdict = "error";
  double runtime_ms = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "reach-control cone analysis: equilibrium restriction polytopes, cone-condition "
      "certificates and affine selector synthesis on simplices"};
  app.require_subcommand(1);

  std::string instance_path, law_path, out_path, report_path, dir_path;
  bool use_float = false, use_exact = false, no_constant = false;
  int sample_count = 0;
  unsigned long long seed = 0;
  int jobs = 1;
  int gen_n = 3;
  std::string gen_case = "N3_D2B2_QUAD";

  auto add_backend_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--exact", use_exact, "exact rational arithmetic (default)");
    cmd->add_flag("--float", use_float, "IEEE double arithmetic with tolerances");
  };
  auto add_tol_option = [&](CLI::App* cmd, std::vector<std::string>& sink) {
    cmd->add_option("--tol", sink,
                    "tolerance override name=value (rank, bary, solve, feas, geo, strict, "
                    "indep, nonzero); float backend only");
  };

  std::vector<std::string> tol_args;

  auto* analyze = app.add_subcommand("analyze", "classification, cone(G) and the cone condition");
  analyze->add_option("instance", instance_path, "instance JSON")->required();
  analyze->add_option("-o,--out", out_path, "report destination (default stdout)");
  add_backend_flags(analyze);
  add_tol_option(analyze, tol_args);

  auto* synth = app.add_subcommand("synthesize", "full pipeline: classify, decide, construct, certify");
  synth->add_option("instance", instance_path, "instance JSON")->required();
  synth->add_option("-o,--out", out_path, "report destination (default stdout)");
  synth->add_flag("--no-constant", no_constant,
                  "skip the constant-selector shortcut in the constructive cases");
  synth->add_option("--samples", sample_count, "extra interior sample checks to record");
  synth->add_option("--sample-seed", seed, "seed for the sample draw");
  add_backend_flags(synth);
  add_tol_option(synth, tol_args);

  auto* verify = app.add_subcommand("verify", "check a law file against an instance");
  verify->add_option("instance", instance_path, "instance JSON")->required();
  verify->add_option("law", law_path, "law JSON (a report or a bare vertex_values object)")
      ->required();
  verify->add_option("-o,--out", out_path, "report destination (default stdout)");
  verify->add_option("--samples", sample_count, "extra interior sample checks to record");
  add_backend_flags(verify);
  add_tol_option(verify, tol_args);

  auto* gen = app.add_subcommand("gen", "generate a random instance for a taxonomy case");
  gen->add_option("--n", gen_n, "dimension (2 or 3)")->check(CLI::Range(2, 3));
  gen->add_option("--case", gen_case, "target case tag");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("-o,--out", out_path, "instance destination (default stdout)");

  auto* batch = app.add_subcommand("batch", "synthesize every *.json instance in a directory");
  batch->add_option("dir", dir_path, "instance directory")->required();
  batch->add_option("-j,--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  batch->add_option("-o,--out", out_path, "CSV destination (default stdout)");
  add_backend_flags(batch);

  auto* plot = app.add_subcommand("plot", "render an instance + report as SVG");
  plot->add_option("instance", instance_path, "instance JSON")->required();
  plot->add_option("report", report_path, "report JSON from analyze/synthesize")->required();
  plot->add_option("-o,--out", out_path, "SVG destination (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions opts;
    if (use_float && use_exact) throw rcp::Error("--exact and --float are mutually exclusive");
    opts.backend = use_float ? Backend::Float : Backend::Exact;
    opts.synth.try_constant_first = !no_constant;
    opts.sample_count = sample_count;
    opts.sample_seed = seed;
    apply_env_tolerances(opts.tols);
    for (const auto& arg : tol_args) {
      auto eq = arg.find('=');
      if (eq == std::string::npos) throw rcp::Error("--tol expects name=value: " + arg);
      const std::string name = arg.substr(0, eq);
      const double value = std::stod(arg.substr(eq + 1));
      if (name == "rank") opts.tols.rank = value;
      else if (name == "bary") opts.tols.bary = value;
      else if (name == "solve") opts.tols.solve = value;
      else if (name == "feas") opts.tols.feas = value;
      else if (name == "geo") opts.tols.geo = value;
      else if (name == "strict") opts.tols.strict = value;
      else if (name == "indep") opts.tols.indep = value;
      else if (name == "nonzero") opts.tols.nonzero = value;
      else throw rcp::Error("--tol: unknown tolerance " + name);
    }

    if (*analyze || *synth || *verify) {
      auto inst = rcp::load_instance(instance_path);
      nlohmann::ordered_json report;
      if (*analyze)
        report = rcp::run_analyze(inst, opts);
      else if (*synth)
        report = rcp::run_synthesize(inst, opts);
      else
        report = rcp::run_verify(inst, load_json(law_path), opts);
      write_output(out_path, report.dump(2) + "\n");
      return rcp::exit_code_for(report);
    }

    if (*gen) {
      auto tag = rcp::case_from_name(gen_case);
      if (!tag) throw rcp::Error("unknown case tag: " + gen_case);
      rcp::GenOptions gopts{gen_n, *tag, seed};
      auto inst = rcp::generate_instance(gopts);
      write_output(out_path, rcp::instance_to_json(inst).dump(2) + "\n");
      return 0;
    }

    if (*batch) {
      std::vector<std::string> files;
      for (const auto& entry : std::filesystem::directory_iterator(dir_path))
        if (entry.path().extension() == ".json") files.push_back(entry.path().string());
      std::sort(files.begin(), files.end());
      std::vector<BatchRow> results(files.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= files.size()) return;
          BatchRow row;
          row.instance = files[i];
          try {
            auto inst = rcp::load_instance(files[i]);
            auto report = rcp::run_synthesize(inst, opts);
            row.verdict = report.value("verdict", "error");
            if (report.contains("classification"))
              row.case_tag = report["classification"].value("case", "-");
            row.runtime_ms = report.value("runtime_ms", 0.0);
          } catch (const std::exception& e) {
            row.verdict = "error";
          }
          results[i] = std::move(row);
        }
      };
      std::vector<std::future<void>> workers;
      for (int j = 0; j < std::max(1, jobs); ++j)
        workers.push_back(std::async(std::launch::async, worker));
      for (auto& w : workers) w.get();
      std::ostringstream csv;
      csv << "instance,case,verdict,runtime_ms\n";
      for (const auto& row : results)
        csv << row.instance << "," << row.case_tag << "," << row.verdict << "," << row.runtime_ms
            << "\n";
      write_output(out_path, csv.str());
      return 0;
    }

    if (*plot) {
      auto inst = rcp::load_instance(instance_path);
      auto report = load_json(report_path);
      write_output(out_path, rcp::render_svg(inst, report));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
