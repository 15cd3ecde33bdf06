// Copyright 2026 The oscpair Authors
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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "oscpair/config.hpp"

namespace oscpair::cli {

/// Provenance record of one CLI run. The hash covers everything that
/// determines the data (version, command, resolved config, grid arguments)
/// and nothing that varies between identical runs.
struct RunManifest {
  std::string command;
  RunConfig config;
  std::map<std::string, std::string> args;
  std::vector<std::string> warnings;
  double wall_time_s = 0.0;

  std::string hash() const;
  std::string to_json() const;

  /// '#'-prefixed header block for CSV files.
  std::string csv_header() const;

  /// Writes manifest_<hash>.json and appends one line to manifests.jsonl.
  std::filesystem::path write(const std::filesystem::path& out_dir) const;
};

}  // namespace oscpair::cli
