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
#ifndef PERCEPT_HARNESS_HPP_
#define PERCEPT_HARNESS_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "percept/attacks.hpp"
#include "percept/image.hpp"
#include "percept/pipeline.hpp"

namespace percept::harness {

// fixed: robustness judged under the same evaluation seed the attack
// optimized against; fresh: re-judged under a distinct (still
// config-derived) seed, i.e. does the attack survive new corruption draws
enum class SeedPolicy { kFixed, kFresh };

struct RunConfig {
  std::string dataset_path;
  std::string dataset_format = "auto";  // auto | png-dir | binary-cache
  std::vector<std::string> bundles;
  std::vector<attacks::AttackSpec> attack_specs;
  int sample_count = 500;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  SeedPolicy policy = SeedPolicy::kFixed;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
};

struct CellResult {
  std::string pipeline;
  std::string attack;
  double clean_acc = 0.0;   // percent
  double attack_acc = 0.0;  // percent still correct after the attack
  double mean_queries = 0.0;
  double mean_linf = 0.0;
  double mean_l0 = 0.0;
  bool capability_error = false;

  nlohmann::json to_json() const;
  static CellResult from_json(const nlohmann::json& j);
};

struct EvaluationReport {
  nlohmann::json config;    // resolved run configuration
  std::string fingerprint;  // hex fnv-1a of the resolved config
  std::vector<CellResult> cells;
  nlohmann::json extra = nlohmann::json::object();  // ablation deltas etc.
  std::vector<nlohmann::json> details;  // one record per (cell, sample)

  nlohmann::json to_json() const;  // without the detail records
  static EvaluationReport from_json(const nlohmann::json& j);

  std::string report_filename() const;
  std::string details_filename() const;
};

// An attackable system under evaluation. make_victim binds it to one
// evaluation seed; stochastic systems redraw corruption per seed.
struct EvalTarget {
  std::string name;
  std::function<std::unique_ptr<attacks::Victim>(std::uint64_t eval_seed)>
      make_victim;
};

EvalTarget pipeline_target(const pipeline::PerceptualPipeline& pp);

// Core protocol: sample sample_count test images uniformly without
// replacement (seeded), measure clean accuracy, run every attack on every
// sampled image, count an image as robust when it is correctly classified
// both before and after the attack.
EvaluationReport evaluate_targets(const RunConfig& cfg,
                                  const std::vector<EvalTarget>& targets,
                                  const imaging::LabeledDataset& test_set);

// File-driven wrappers: load dataset + bundles, evaluate, write
// report-<fp>.json and details-<fp>.jsonl into output_dir.
EvaluationReport evaluate(const RunConfig& cfg);

// Paired NSR-vs-SR evaluation; bundles[0] must be an NSR bundle, the SR arm
// is the same pipeline with corruption disabled. extra["nsr_deltas"] carries
// the per-attack accuracy deltas.
EvaluationReport ablation_nsr(const RunConfig& cfg);

// One FIR bundle per grid size; rows ordered by ascending grid on a shared
// sample. extra["grids"] lists the grid per pipeline row.
EvaluationReport ablation_grid(const RunConfig& cfg);

imaging::LabeledDataset load_dataset_auto(const std::string& path,
                                          const std::string& format,
                                          imaging::Split split);

void write_report_files(const EvaluationReport& report,
                        const std::string& output_dir);
EvaluationReport load_report(const std::string& report_path);

// Recomputes every cell from a details jsonl file and checks it matches the
// report; throws FormatError on any inconsistency.
void audit_report(const EvaluationReport& report,
                  const std::string& details_path);

std::string config_fingerprint(const nlohmann::json& config);

}  // namespace percept::harness

#endif  // PERCEPT_HARNESS_HPP_
