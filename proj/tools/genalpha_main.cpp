// Copyright 2026 The genalpha Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// genalpha <study> --config <file.json> --out <file.csv>
//
// Exit codes: 0 success, 2 instability or CFL abort, 3 configuration error,
// 1 anything else. GENALPHA_THREADS sets the worker count.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "genalpha/error.hpp"
#include "genalpha/study.hpp"

namespace {

constexpr int kExitInstability = 2;
constexpr int kExitConfig = 3;

std::string sidecar_path(const std::string& out) {
  const std::string ext = ".csv";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + ".summary.csv";
  }
  return out + ".summary.csv";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace genalpha;
  CLI::App app{"Explicit generalized-alpha wave solver: study drivers"};
  std::string study_name;
  std::string config_path;
  std::string out_path;
  std::string kinds;
  for (const auto& k : study::study_kinds()) kinds += (kinds.empty() ? "" : ", ") + k;
  app.add_option("study", study_name, "Study kind: " + kinds)->required();
  app.add_option("--config,-c", config_path, "JSON configuration (defaults apply when omitted)");
  app.add_option("--out,-o", out_path, "Output file")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const auto config = config_path.empty() ? study::parse_config("{}", study_name)
                                            : study::load_config(config_path, study_name);
    const auto result = study::run_study(config);
    if (result.text) {
      std::ofstream out(out_path);
      if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
      out << *result.text;
    } else {
      result.table.write(out_path);
    }
    if (result.summary) result.summary->write(sidecar_path(out_path));
    for (const auto& line : result.log) std::cerr << "genalpha: " << line << '\n';
    if (result.aborted > 0) {
      std::cerr << "genalpha: " << result.aborted << " run(s) aborted on instability or the CFL limit\n";
      return kExitInstability;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "genalpha: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StabilityError& e) {
    std::cerr << "genalpha: " << e.what() << '\n';
    return kExitInstability;
  } catch (const std::exception& e) {
    std::cerr << "genalpha: error: " << e.what() << '\n';
    return 1;
  }
}
