// Copyright 2026 The Fedchain Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedchain/cli.hpp"
#include "fedchain/common.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fedchain::fail(fedchain::Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Federated proof-of-stake chain simulator"};
  app.require_subcommand(1);

  auto* table = app.add_subcommand("confirm-table", "Confirmation depth and time per adversarial ratio");
  std::vector<double> ratios;
  double slot_seconds = 20.0;
  table->add_option("--ratios", ratios, "Comma-separated adversarial ratios")->delimiter(',');
  table->add_option("--slot-seconds", slot_seconds, "Slot duration in seconds")->capture_default_str();

  auto* eq = app.add_subcommand("equilibrium", "Follower equilibrium and leader optimum for a game config");
  std::string eq_config;
  eq->add_option("--config", eq_config, "JSON game config")->required();

  auto* simulate = app.add_subcommand("simulate", "Run scenarios and write metrics");
  std::string sim_config;
  std::string out_dir;
  std::size_t workers = 1;
  simulate->add_option("--config", sim_config, "JSON scenario or batch")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--workers", workers, "Parallel scenarios")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*table) {
      std::cout << fedchain::cli::confirm_table(ratios.empty() ? fedchain::cli::default_ratios() : ratios,
                                                slot_seconds);
    } else if (*eq) {
      std::cout << fedchain::cli::equilibrium_report(slurp(eq_config));
    } else if (*simulate) {
      std::optional<std::string> seed;
      if (const char* env = std::getenv("FEDCHAIN_SEED"); env != nullptr && *env != '\0') seed = env;
      for (const auto& m : fedchain::cli::simulate(sim_config, out_dir, workers, seed))
        std::cout << m.scenario << " -> " << m.output_dir << "\n";
    }
  } catch (const fedchain::Error& e) {
    std::cerr << "error [" << fedchain::to_string(e.code()) << "]: " << e.what() << "\n";
    return fedchain::cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
