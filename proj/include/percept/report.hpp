/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_REPORT_HPP_
#define PERCEPT_REPORT_HPP_

#include <string>
#include <vector>

#include "percept/harness.hpp"

namespace percept::report {

// Renders an evaluation report into output_dir: a CSV with the fixed column
// set (pipeline, attack, clean_acc, attack_acc, mean_queries, mean_linf,
// mean_l0), a markdown table, and one accuracy bar chart PNG per attack.
// Filenames embed the report's config fingerprint. Deterministic: rendering
// twice overwrites with identical bytes.
std::vector<std::string> report_render(const harness::EvaluationReport& rep,
                                       const std::string& output_dir);

std::string render_csv(const harness::EvaluationReport& rep);
std::string render_markdown(const harness::EvaluationReport& rep);

// Grouped bar chart; values[s][g] is series s at group g, in [0, 100].
void draw_bar_chart(const std::string& path, const std::string& title,
                    const std::vector<std::string>& group_labels,
                    const std::vector<std::string>& series_labels,
                    const std::vector<std::vector<double>>& values);

}  // namespace percept::report

#endif  // PERCEPT_REPORT_HPP_
