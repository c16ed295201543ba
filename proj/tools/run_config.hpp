#pragma once
#include <string>

#include "trcomm/scenario.hpp"
#include "trcomm/schemes.hpp"

namespace trcomm::cli {

struct OutputOptions {
  bool trace_csv = true;
  int snapshot_every = 0;
  bool signal_dumps = true;
};

struct RunConfig {
  SceneSpec scene;
  SchemeConfig scheme;
  bool lambda_given = false;  // if false, reg schemes get 1e-2 * ||A||^2
  OutputOptions output;
};

// Parses a JSON config with keys mirroring SceneSpec/SchemeConfig.
// Unknown keys are hard errors naming the offending key.
RunConfig parse_run_config(const std::string& path);

}  // namespace trcomm::cli
