/*
 * Copyright 2026 The adasample Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "adasample/error.hpp"
#include "adasample/harness.hpp"
#include "adasample/report.hpp"

namespace {

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw adasample::Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive training-distribution search with density trees"};
  app.require_subcommand(1);

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "Run the searches described by a config file");
  experiment->add_option("config", config_path, "key = value config file")->required();

  std::string summary_dir;
  std::size_t summary_n = 10000;
  std::uint64_t summary_seed = 0;
  std::string summary_out;
  auto* summary = app.add_subcommand("depth-summary", "Improvement-weighted depth distribution as a KDE curve");
  summary->add_option("results-dir", summary_dir, "experiment output directory")->required();
  summary->add_option("-n,--samples", summary_n, "total depth draws")->check(CLI::PositiveNumber);
  summary->add_option("--seed", summary_seed, "sampling seed");
  summary->add_option("-o,--output", summary_out, "write CSV here instead of stdout");

  std::string report_dir;
  std::string report_format = "csv";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Emit the result table");
  report->add_option("results-dir", report_dir, "experiment output directory")->required();
  report->add_option("--format", report_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report->add_option("-o,--output", report_out, "write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*experiment) {
      const auto config = adasample::load_config(config_path);
      const auto result = adasample::run_experiment(config);
      if (result.rows.empty()) throw adasample::Error("experiment produced no rows");
      std::cout << adasample::emit_report(result.rows, adasample::ReportFormat::Csv);
      if (!config.output_dir.empty()) std::cerr << "results written to " << config.output_dir << "\n";
    } else if (*summary) {
      const auto rows = adasample::load_result_rows(summary_dir);
      write_or_print(summary_out, adasample::depth_summary_csv(adasample::depth_summary(rows, summary_n, summary_seed)));
    } else if (*report) {
      const auto rows = adasample::load_result_rows(report_dir);
      write_or_print(report_out, adasample::emit_report(rows, adasample::parse_report_format(report_format)));
    }
  } catch (const std::exception& e) {
    std::cerr << "adasample: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
