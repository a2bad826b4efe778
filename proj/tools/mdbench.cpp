// mdbench: measurement-discrimination benchmarks on a seeded local
// simulator.
//
//   mdbench disc-fourier benchmark EXPERIMENT BACKEND [--output PATH] [--serial]
//   mdbench disc-fourier status INTERMEDIATE
//   mdbench disc-fourier resolve INTERMEDIATE OUTPUT [--serial]
//   mdbench disc-fourier tabulate RESULTS CSV
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "mdbench/errors.hpp"
#include "mdbench/workflow.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Measurement-discrimination benchmarks on a local simulator"};
  app.require_subcommand(1);

  CLI::App* disc =
      app.add_subcommand("disc-fourier", "Phase-parametrized measurement discrimination");
  disc->require_subcommand(1);

  std::string experiment_path;
  std::string backend_path;
  std::string output_path;
  std::string intermediate_path;
  std::string results_path;
  std::string csv_path;
  bool serial = false;

  CLI::App* benchmark =
      disc->add_subcommand("benchmark", "Run the experiment described by two YAML files");
  benchmark->add_option("EXPERIMENT", experiment_path, "experiment YAML file")->required();
  benchmark->add_option("BACKEND", backend_path, "backend YAML file")->required();
  benchmark->add_option("--output", output_path,
                        "result file (stdout when omitted; required for asynchronous backends)");
  benchmark->add_flag("--serial", serial, "run circuits one after another");

  CLI::App* status =
      disc->add_subcommand("status", "Show the job-status histogram of an intermediate document");
  status->add_option("INTERMEDIATE", intermediate_path, "intermediate YAML file")->required();

  CLI::App* resolve =
      disc->add_subcommand("resolve", "Execute pending jobs and write the final document");
  resolve->add_option("INTERMEDIATE", intermediate_path, "intermediate YAML file")->required();
  resolve->add_option("OUTPUT", output_path, "result file")->required();
  resolve->add_flag("--serial", serial, "run circuits one after another");

  CLI::App* tabulate = disc->add_subcommand("tabulate", "Summarize a result document as CSV");
  tabulate->add_option("RESULTS", results_path, "result YAML file")->required();
  tabulate->add_option("CSV", csv_path, "output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const mdbench::ExecutionPolicy policy =
      serial ? mdbench::ExecutionPolicy::kSerial : mdbench::ExecutionPolicy::kParallel;
  try {
    if (benchmark->parsed()) {
      std::optional<std::string> output;
      if (!output_path.empty()) {
        output = output_path;
      }
      mdbench::command_benchmark(experiment_path, backend_path, output, std::cout, policy);
    } else if (status->parsed()) {
      mdbench::command_status(intermediate_path, std::cout);
    } else if (resolve->parsed()) {
      mdbench::command_resolve(intermediate_path, output_path, policy);
    } else if (tabulate->parsed()) {
      mdbench::command_tabulate(results_path, csv_path);
    }
  } catch (const mdbench::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
