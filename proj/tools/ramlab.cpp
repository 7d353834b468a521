#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ramlab/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wild ramification invariants of rank-1 Artin-Schreier sheaves"};
  std::string manifest_path;
  std::string out_dir;
  std::string format = "all";
  unsigned parallel = 1;
  std::optional<std::uint64_t> seed;
  std::optional<int> guard;
  app.add_option("--manifest", manifest_path, "Problem manifest")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Directory for report.txt, report.json and CSV tables (default: print to stdout)");
  app.add_option("--format", format, "text, json, csv or all")
      ->check(CLI::IsMember({"text", "json", "csv", "all"}));
  app.add_option("--parallel", parallel, "Sweep slice parallelism")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", seed, "Seed for a randomized Artin-Schreier reduction order");
  app.add_option("--precision-guard", guard, "Extra series precision beyond the certified polar part")
      ->check(CLI::Range(0, 4096));
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(manifest_path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();

  ramlab::Manifest manifest;
  try {
    manifest = ramlab::parse_manifest(buf.str());
  } catch (const ramlab::ManifestError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << manifest_path << ':' << d.to_string() << '\n';
    return 2;
  }

  ramlab::RunOptions options;
  options.parallel = parallel;
  options.seed = seed;
  options.precision_guard = guard;
  const auto report = ramlab::run_manifest(manifest, options);

  try {
    const auto fmt = ramlab::parse_format(format);
    if (out_dir.empty()) {
      if (fmt == ramlab::OutputFormat::Json) {
        std::cout << ramlab::report_json(report);
      } else if (fmt == ramlab::OutputFormat::Csv) {
        for (const auto& t : report.tasks)
          for (const auto& c : t.csv) std::cout << "# " << c.name << '\n' << c.content;
      } else {
        std::cout << ramlab::report_text(report);
      }
    } else {
      for (const auto& f : ramlab::write_report(report, out_dir, fmt)) std::cerr << "wrote " << f << '\n';
    }
  } catch (const ramlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return report.any_error() ? 1 : 0;
}
