// Copyright 2026 The povm-purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "povm/errors.h"
#include "povm/harness.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

int fail(int code, const std::string &kind, const std::string &what) {
  std::cerr << "povm-purify: " << kind << ": " << what << '\n';
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Purification of noisy measurements by cloning: distributions, estimation, mutual information, CV optics.",
               "povm-purify"};
  app.set_version_flag("--version", POVM_VERSION);

  std::string experiment_name;
  std::string figure_name;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = povm::kDefaultSeed;

  app.add_option("experiment", experiment_name,
                 "dist | estimate | mi | mi-binary | mi-majority | mi-qudit | cv-photo | cv-homodyne | "
                 "cv-heterodyne | reproduce")
      ->required();
  app.add_option("figure_positional", figure_name, "figure for reproduce: fig4 | fig5 | fig6 | fig8 | fig-qudit");
  app.add_option("--config", config_path, "key=value file; flags override it");
  app.add_option("--out", out_path, "CSV destination (default stdout)");
  auto *seed_opt = app.add_option("--seed", seed, "RNG seed");

  std::map<std::string, std::string> flags;
  for (const auto &name : povm::known_parameters()) {
    app.add_option("--" + name, flags[name], "grid value for " + name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    povm::ExperimentConfig config;
    if (!config_path.empty()) {
      config = povm::load_config_file(config_path);
    }
    const auto experiment = povm::parse_experiment(experiment_name);
    if (!experiment) {
      throw povm::ValidationError("experiment", "unknown experiment '" + experiment_name + "'");
    }
    config.experiment = *experiment;
    if (!figure_name.empty()) {
      if (config.experiment != povm::Experiment::kReproduce) {
        throw povm::ValidationError("figure", "a positional figure only applies to reproduce");
      }
      config.params["figure"] = figure_name;
    }
    for (const auto &[name, value] : flags) {
      if (app.count("--" + name) > 0) {
        config.params[name] = value;
      }
    }
    if (seed_opt->count() > 0) {
      config.seed = seed;
    }
    if (!out_path.empty()) {
      config.output_path = out_path;
    }

    const povm::ResultTable table = povm::run(config);
    if (config.output_path.empty()) {
      povm::write_csv(std::cout, table);
    } else {
      std::ofstream out(config.output_path);
      if (!out) {
        return fail(kExitResource, "resource error", "cannot write '" + config.output_path + "'");
      }
      povm::write_csv(out, table);
    }
  } catch (const povm::ValidationError &e) {
    return fail(kExitValidation, "validation error", e.what());
  } catch (const povm::DomainError &e) {
    return fail(kExitValidation, "validation error", e.what());
  } catch (const std::invalid_argument &e) {
    return fail(kExitValidation, "validation error", e.what());
  } catch (const povm::ResourceError &e) {
    return fail(kExitResource, "resource error", e.what());
  } catch (const povm::ConvergenceError &e) {
    return fail(kExitResource, "resource error", e.what());
  } catch (const std::exception &e) {
    return fail(1, "error", e.what());
  }
  return 0;
}
