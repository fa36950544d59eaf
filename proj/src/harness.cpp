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

#include "percept/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include "percept/errors.hpp"
#include "percept/victims.hpp"

namespace fs = std::filesystem;

namespace percept::harness {
namespace {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string policy_name(SeedPolicy p) {
  return p == SeedPolicy::kFixed ? "fixed" : "fresh";
}

SeedPolicy policy_from_name(const std::string& name) {
  if (name == "fixed") return SeedPolicy::kFixed;
  if (name == "fresh") return SeedPolicy::kFresh;
  throw ParamError("harness: unknown seed policy '" + name + "'");
}

std::vector<std::size_t> sample_indices(std::size_t n, int count, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  rng.shuffle(all);
  all.resize(count);
  return all;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json attacks_j = nlohmann::json::array();
  for (const auto& a : attack_specs) attacks_j.push_back(a.to_json());
  return {{"dataset", dataset_path},
          {"format", dataset_format},
          {"bundles", bundles},
          {"attacks", attacks_j},
          {"sample_count", sample_count},
          {"seed", seed},
          {"output_dir", output_dir},
          {"seed_policy", policy_name(policy)}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.dataset_path = j.value("dataset", "");
  cfg.dataset_format = j.value("format", "auto");
  if (j.contains("bundles"))
    cfg.bundles = j.at("bundles").get<std::vector<std::string>>();
  if (j.contains("attacks")) {
    for (const auto& a : j.at("attacks"))
      cfg.attack_specs.push_back(attacks::AttackSpec::from_json(a));
  }
  cfg.sample_count = j.value("sample_count", cfg.sample_count);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.policy = policy_from_name(j.value("seed_policy", "fixed"));
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw NotFoundError("harness: cannot open config " + path);
  nlohmann::json j;
  is >> j;
  return from_json(j);
}

nlohmann::json CellResult::to_json() const {
  return {{"pipeline", pipeline},
          {"attack", attack},
          {"clean_acc", clean_acc},
          {"attack_acc", attack_acc},
          {"mean_queries", mean_queries},
          {"mean_linf", mean_linf},
          {"mean_l0", mean_l0},
          {"capability_error", capability_error}};
}

CellResult CellResult::from_json(const nlohmann::json& j) {
  CellResult c;
  c.pipeline = j.at("pipeline").get<std::string>();
  c.attack = j.at("attack").get<std::string>();
  c.clean_acc = j.at("clean_acc").get<double>();
  c.attack_acc = j.at("attack_acc").get<double>();
  c.mean_queries = j.at("mean_queries").get<double>();
  c.mean_linf = j.at("mean_linf").get<double>();
  c.mean_l0 = j.at("mean_l0").get<double>();
  c.capability_error = j.value("capability_error", false);
  return c;
}

nlohmann::json EvaluationReport::to_json() const {
  nlohmann::json cells_j = nlohmann::json::array();
  for (const auto& c : cells) cells_j.push_back(c.to_json());
  return {{"config", config},
          {"fingerprint", fingerprint},
          {"cells", cells_j},
          {"extra", extra},
          {"details_file", details_filename()}};
}

EvaluationReport EvaluationReport::from_json(const nlohmann::json& j) {
  EvaluationReport r;
  r.config = j.at("config");
  r.fingerprint = j.at("fingerprint").get<std::string>();
  for (const auto& c : j.at("cells")) r.cells.push_back(CellResult::from_json(c));
  r.extra = j.value("extra", nlohmann::json::object());
  return r;
}

std::string EvaluationReport::report_filename() const {
  return "report-" + fingerprint + ".json";
}

std::string EvaluationReport::details_filename() const {
  return "details-" + fingerprint + ".jsonl";
}

std::string config_fingerprint(const nlohmann::json& config) {
  return hex64(fnv1a(config.dump()));
}

EvalTarget pipeline_target(const pipeline::PerceptualPipeline& pp) {
  EvalTarget t;
  t.name = pp.name();
  t.make_victim = [&pp](std::uint64_t eval_seed) {
    return std::make_unique<attacks::PipelineVictim>(pp, eval_seed);
  };
  return t;
}

imaging::LabeledDataset load_dataset_auto(const std::string& path,
                                          const std::string& format,
                                          imaging::Split split) {
  using imaging::DatasetFormat;
  DatasetFormat f;
  if (format == "png-dir") {
    f = DatasetFormat::kPngDir;
  } else if (format == "binary-cache") {
    f = DatasetFormat::kBinaryCache;
  } else if (format == "auto") {
    if (!fs::exists(path))
      throw NotFoundError("harness: no such dataset " + path);
    f = fs::is_directory(path) ? DatasetFormat::kPngDir
                               : DatasetFormat::kBinaryCache;
  } else {
    throw ParamError("harness: unknown dataset format '" + format + "'");
  }
  return imaging::load_dataset(path, f, split);
}

EvaluationReport evaluate_targets(const RunConfig& cfg,
                                  const std::vector<EvalTarget>& targets,
                                  const imaging::LabeledDataset& test_set) {
  if (targets.empty()) throw ConfigError("harness: no evaluation targets");
  if (cfg.sample_count < 1 ||
      static_cast<std::size_t>(cfg.sample_count) > test_set.size()) {
    throw ConfigError("harness: sample_count " +
                      std::to_string(cfg.sample_count) +
                      " outside [1, test size " +
                      std::to_string(test_set.size()) + "]");
  }

  EvaluationReport report;
  report.config = cfg.to_json();
  report.fingerprint = config_fingerprint(report.config);

  const Rng root(cfg.seed);
  Rng sampler = root.child("sample");
  const std::vector<std::size_t> sample =
      sample_indices(test_set.size(), cfg.sample_count, sampler);

  for (const auto& target : targets) {
    // clean predictions under the per-sample evaluation seeds
    std::vector<int> clean_pred(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto victim =
          target.make_victim(root.child("eval", i).seed());
      clean_pred[i] = victim->predict_class(test_set.images[sample[i]]);
    }
    std::size_t clean_correct = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      if (clean_pred[i] == test_set.labels[sample[i]]) ++clean_correct;
    }
    const double clean_acc =
        100.0 * static_cast<double>(clean_correct) / sample.size();

    for (const auto& spec : cfg.attack_specs) {
      CellResult cell;
      cell.pipeline = target.name;
      cell.attack = spec.name();
      cell.clean_acc = clean_acc;

      std::size_t robust = 0;
      double sum_queries = 0.0, sum_linf = 0.0, sum_l0 = 0.0;
      std::vector<nlohmann::json> cell_details;
      bool capability_error = false;

      for (std::size_t i = 0; i < sample.size(); ++i) {
        const std::size_t idx = sample[i];
        const imaging::Image& img = test_set.images[idx];
        const int label = test_set.labels[idx];
        const std::uint64_t eval_seed = root.child("eval", i).seed();
        const auto victim = target.make_victim(eval_seed);

        attacks::AttackResult result;
        try {
          Rng attack_rng = root.child(
              target.name + "/" + spec.name() + "/attack", i);
          result = attacks::run_attack(*victim, img, label, spec, attack_rng);
        } catch (const CapabilityError&) {
          capability_error = true;
          break;
        }

        // successes are never trusted from the loop: re-run the adversarial
        // image through a fresh victim bound to the same evaluation seed
        bool reverified = false;
        if (result.success) {
          const auto verify_victim = target.make_victim(eval_seed);
          reverified =
              verify_victim->predict_class(result.adversarial) != label;
        }

        int post_pred;
        if (cfg.policy == SeedPolicy::kFixed) {
          const auto post_victim = target.make_victim(eval_seed);
          post_pred = post_victim->predict_class(result.adversarial);
        } else {
          const std::uint64_t fresh_seed =
              root.child(target.name + "/" + spec.name() + "/reeval", i)
                  .seed();
          const auto post_victim = target.make_victim(fresh_seed);
          post_pred = post_victim->predict_class(result.adversarial);
        }

        const bool is_robust =
            clean_pred[i] == label && post_pred == label;
        if (is_robust) ++robust;
        sum_queries += static_cast<double>(result.queries);
        sum_linf += result.linf_norm;
        sum_l0 += static_cast<double>(result.l0_norm);

        nlohmann::json rec = {{"pipeline", target.name},
                              {"attack", spec.name()},
                              {"sample", i},
                              {"index", idx},
                              {"label", label},
                              {"clean_pred", clean_pred[i]},
                              {"success", result.success},
                              {"reverified", reverified},
                              {"post_pred", post_pred},
                              {"robust", is_robust},
                              {"linf", result.linf_norm},
                              {"l0", result.l0_norm},
                              {"queries", result.queries}};
        if (result.l0_norm > 0 && result.l0_norm <= 16) {
          nlohmann::json diff = nlohmann::json::array();
          for (int y = 0; y < img.h; ++y) {
            for (int x = 0; x < img.w; ++x) {
              if (img.at(y, x, 0) != result.adversarial.at(y, x, 0) ||
                  img.at(y, x, 1) != result.adversarial.at(y, x, 1) ||
                  img.at(y, x, 2) != result.adversarial.at(y, x, 2)) {
                diff.push_back({y, x, result.adversarial.at(y, x, 0),
                                result.adversarial.at(y, x, 1),
                                result.adversarial.at(y, x, 2)});
              }
            }
          }
          rec["diff"] = diff;
        }
        cell_details.push_back(std::move(rec));
      }

      if (capability_error) {
        cell.capability_error = true;
      } else {
        cell.attack_acc = 100.0 * static_cast<double>(robust) / sample.size();
        cell.mean_queries = sum_queries / sample.size();
        cell.mean_linf = sum_linf / sample.size();
        cell.mean_l0 = sum_l0 / sample.size();
        for (auto& rec : cell_details)
          report.details.push_back(std::move(rec));
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_report_files(const EvaluationReport& report,
                        const std::string& output_dir) {
  fs::create_directories(output_dir);
  const fs::path dir(output_dir);
  {
    std::ofstream os(dir / report.report_filename(),
                     std::ios::binary | std::ios::trunc);
    if (!os) throw IOError("harness: cannot write report file");
    os << report.to_json().dump(2) << "\n";
  }
  {
    std::ofstream os(dir / report.details_filename(),
                     std::ios::binary | std::ios::trunc);
    if (!os) throw IOError("harness: cannot write details file");
    for (const auto& rec : report.details) os << rec.dump() << "\n";
  }
}

EvaluationReport load_report(const std::string& report_path) {
  std::ifstream is(report_path);
  if (!is) throw NotFoundError("harness: cannot open report " + report_path);
  nlohmann::json j;
  is >> j;
  return EvaluationReport::from_json(j);
}

void audit_report(const EvaluationReport& report,
                  const std::string& details_path) {
  std::ifstream is(details_path);
  if (!is) throw NotFoundError("harness: cannot open details " + details_path);

  struct Tally {
    std::size_t robust = 0;
    std::size_t total = 0;
  };
  std::map<std::pair<std::string, std::string>, Tally> tallies;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const nlohmann::json rec = nlohmann::json::parse(line);
    auto& tally = tallies[{rec.at("pipeline").get<std::string>(),
                           rec.at("attack").get<std::string>()}];
    ++tally.total;
    if (rec.at("robust").get<bool>()) ++tally.robust;
    if (rec.at("success").get<bool>() && !rec.at("reverified").get<bool>())
      throw FormatError("audit: unverified success record");
  }

  for (const auto& cell : report.cells) {
    if (cell.capability_error) continue;
    const auto it = tallies.find({cell.pipeline, cell.attack});
    if (it == tallies.end())
      throw FormatError("audit: no detail records for cell " + cell.pipeline +
                        "/" + cell.attack);
    const double acc =
        100.0 * static_cast<double>(it->second.robust) / it->second.total;
    if (std::fabs(acc - cell.attack_acc) > 1e-9)
      throw FormatError("audit: attack accuracy mismatch for " +
                        cell.pipeline + "/" + cell.attack);
  }
}

EvaluationReport evaluate(const RunConfig& cfg) {
  const auto test_set = load_dataset_auto(cfg.dataset_path, cfg.dataset_format,
                                          imaging::Split::kTest);
  if (cfg.bundles.empty()) throw ConfigError("harness: no bundles configured");

  std::vector<pipeline::PerceptualPipeline> pipelines;
  pipelines.reserve(cfg.bundles.size());
  for (const auto& path : cfg.bundles)
    pipelines.push_back(pipeline::PerceptualPipeline::load(path));

  std::vector<EvalTarget> targets;
  for (const auto& pp : pipelines) targets.push_back(pipeline_target(pp));

  EvaluationReport report = evaluate_targets(cfg, targets, test_set);
  write_report_files(report, cfg.output_dir);
  audit_report(report,
               (fs::path(cfg.output_dir) / report.details_filename()).string());
  return report;
}

EvaluationReport ablation_nsr(const RunConfig& cfg) {
  if (cfg.bundles.empty())
    throw ConfigError("harness: ablation needs an nsr bundle");
  const auto test_set = load_dataset_auto(cfg.dataset_path, cfg.dataset_format,
                                          imaging::Split::kTest);

  auto nsr = pipeline::PerceptualPipeline::load(cfg.bundles[0]);
  if (nsr.variant() != pipeline::Variant::kNsr)
    throw ConfigError("harness: bundle " + cfg.bundles[0] +
                      " is not an nsr pipeline");
  auto sr = nsr.without_corruption();

  std::vector<EvalTarget> targets = {pipeline_target(nsr),
                                     pipeline_target(sr)};
  EvaluationReport report = evaluate_targets(cfg, targets, test_set);

  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& spec : cfg.attack_specs) {
    const std::string attack = spec.name();
    const CellResult* nsr_cell = nullptr;
    const CellResult* sr_cell = nullptr;
    for (const auto& cell : report.cells) {
      if (cell.attack != attack) continue;
      if (cell.pipeline == nsr.name()) nsr_cell = &cell;
      if (cell.pipeline == sr.name()) sr_cell = &cell;
    }
    if (nsr_cell && sr_cell) {
      deltas.push_back({{"attack", attack},
                        {"nsr_acc", nsr_cell->attack_acc},
                        {"sr_acc", sr_cell->attack_acc},
                        {"delta", nsr_cell->attack_acc - sr_cell->attack_acc}});
    }
  }
  report.extra["nsr_deltas"] = deltas;

  write_report_files(report, cfg.output_dir);
  audit_report(report,
               (fs::path(cfg.output_dir) / report.details_filename()).string());
  return report;
}

EvaluationReport ablation_grid(const RunConfig& cfg) {
  if (cfg.bundles.empty())
    throw ConfigError("harness: grid ablation needs fir bundles");
  const auto test_set = load_dataset_auto(cfg.dataset_path, cfg.dataset_format,
                                          imaging::Split::kTest);

  std::vector<pipeline::PerceptualPipeline> pipelines;
  for (const auto& path : cfg.bundles) {
    pipelines.push_back(pipeline::PerceptualPipeline::load(path));
    if (pipelines.back().variant() != pipeline::Variant::kFir)
      throw ConfigError("harness: bundle " + path + " is not a fir pipeline");
  }
  std::sort(pipelines.begin(), pipelines.end(),
            [](const auto& a, const auto& b) {
              return a.mask_set().grid < b.mask_set().grid;
            });
  for (std::size_t i = 1; i < pipelines.size(); ++i) {
    if (pipelines[i].mask_set().grid == pipelines[i - 1].mask_set().grid)
      throw ConfigError("harness: duplicate grid size in fir bundles");
  }

  std::vector<EvalTarget> targets;
  nlohmann::json grids = nlohmann::json::array();
  for (const auto& pp : pipelines) {
    targets.push_back(pipeline_target(pp));
    grids.push_back({{"pipeline", pp.name()}, {"grid", pp.mask_set().grid}});
  }

  EvaluationReport report = evaluate_targets(cfg, targets, test_set);
  report.extra["grids"] = grids;

  write_report_files(report, cfg.output_dir);
  audit_report(report,
               (fs::path(cfg.output_dir) / report.details_filename()).string());
  return report;
}

}  // namespace percept::harness
