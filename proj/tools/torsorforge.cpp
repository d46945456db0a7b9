// torsorforge <command> <scenario-file> [--format text|json] [--budget N] [--workers N] [--timing]

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "torsorforge/cli/report.hpp"

namespace tf = torsorforge;

int main(int argc, char** argv) {
  CLI::App app{"Classify torsors, group coverings and Cech classes over finite models"};
  std::string command, path, format = "text";
  std::optional<std::uint64_t> budget;
  unsigned workers = 1;
  bool timing = false;
  app.add_option("command", command, "one of: classify-torsors, classify-coverings, cech, compare, oracle, "
                                     "holonomy-roundtrip, frame-roundtrip, gauge")
      ->required()
      ->check(CLI::IsMember(tf::cli::commands()));
  app.add_option("scenario", path, "scenario file")->required();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", budget, "search budget (falls back to $TORSORFORGE_BUDGET)");
  app.add_option("--workers", workers, "worker threads for exhaustive searches")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "append wall-clock seconds (reports are then not reproducible)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  tf::SearchOptions options;
  options.workers = workers;
  if (budget) {
    options.budget = *budget;
  } else if (const char* env = std::getenv("TORSORFORGE_BUDGET")) {
    try {
      options.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "torsorforge: TORSORFORGE_BUDGET is not a number\n";
      return 1;
    }
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "torsorforge: cannot read " << path << "\n";
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();

  try {
    const auto start = std::chrono::steady_clock::now();
    const tf::cli::Scenario sc = tf::cli::parse_scenario(text.str());
    tf::cli::Report report = tf::cli::run(sc, command, options);
    if (timing)
      report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << tf::cli::emit_report(report, format);
    return report.mismatch() ? 4 : 0;
  } catch (const tf::cli::ScenarioError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    return tf::cli::exit_status(e.code());
  } catch (const tf::Error& e) {
    std::cerr << "torsorforge: " << e.what() << "\n";
    return e.kind() == tf::ErrorKind::capacity ? 2 : e.kind() == tf::ErrorKind::invariant ? 3 : 1;
  }
}
