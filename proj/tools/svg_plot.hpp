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

#include <string>
#include <vector>

namespace oscpair::cli {

/// Minimal static line plot on a fixed 800x600 canvas.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label, bool log_x = false);

  void add_series(std::string name, std::vector<double> x, std::vector<double> y,
                  bool dashed = false);

  /// Non-finite samples break the polyline.
  std::string render() const;

 private:
  struct Series {
    std::string name;
    std::vector<double> x, y;
    bool dashed;
  };

  std::string title_, x_label_, y_label_;
  bool log_x_;
  std::vector<Series> series_;
};

}  // namespace oscpair::cli
