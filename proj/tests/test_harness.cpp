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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "percept/errors.hpp"
#include "percept/harness.hpp"
#include "percept/report.hpp"
#include "percept/synth.hpp"
#include "testutil.hpp"

using namespace percept;
using namespace percept::harness;
using imaging::Image;

namespace {

class FixedVictim : public attacks::Victim {
 public:
  explicit FixedVictim(int winner) : winner_(winner) {}
  int num_classes() const override { return 2; }
  std::vector<double> predict(const Image&) const override {
    std::vector<double> p = {0.1, 0.1};
    p[winner_] = 0.9;
    return p;
  }

 private:
  int winner_;
};

EvalTarget fixed_target(const std::string& name, int winner) {
  EvalTarget t;
  t.name = name;
  t.make_victim = [winner](std::uint64_t) {
    return std::make_unique<FixedVictim>(winner);
  };
  return t;
}

imaging::LabeledDataset zero_labeled_set(int count) {
  imaging::LabeledDataset ds;
  ds.num_classes = 2;
  Rng rng(123);
  for (int i = 0; i < count; ++i) {
    ds.images.push_back(testutil::random_image(8, 8, rng));
    ds.labels.push_back(0);
  }
  ds.split = imaging::Split::kTest;
  return ds;
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.sample_count = 10;
  cfg.seed = 5;
  cfg.attack_specs = {attacks::AttackSpec::parse("pixel:k=1,pop=8,gens=3")};
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("harness: oracle victims bound the accuracy range") {
  const auto ds = zero_labeled_set(20);
  const auto cfg = small_config();

  // always predicts the true label: clean 100, still 100 under attack
  auto rep_good =
      evaluate_targets(cfg, {fixed_target("always-right", 0)}, ds);
  REQUIRE(rep_good.cells.size() == 1);
  CHECK(rep_good.cells[0].clean_acc == 100.0);
  CHECK(rep_good.cells[0].attack_acc == 100.0);

  // always predicts the wrong label: clean 0, under attack 0
  auto rep_bad = evaluate_targets(cfg, {fixed_target("always-wrong", 1)}, ds);
  CHECK(rep_bad.cells[0].clean_acc == 0.0);
  CHECK(rep_bad.cells[0].attack_acc == 0.0);
}

TEST_CASE("harness: white-box attack on a gradient-less victim marks the "
          "cell as capability error") {
  const auto ds = zero_labeled_set(12);
  auto cfg = small_config();
  cfg.attack_specs = {attacks::AttackSpec::parse("fgsm:eps=0.03"),
                      attacks::AttackSpec::parse("pixel:k=1,pop=8,gens=2")};

  const auto rep =
      evaluate_targets(cfg, {fixed_target("black-box-only", 0)}, ds);
  REQUIRE(rep.cells.size() == 2);
  CHECK(rep.cells[0].capability_error);
  CHECK_FALSE(rep.cells[1].capability_error);
}

TEST_CASE("harness: sample count must fit the test set") {
  const auto ds = zero_labeled_set(5);
  auto cfg = small_config();
  cfg.sample_count = 6;
  CHECK_THROWS_AS(evaluate_targets(cfg, {fixed_target("v", 0)}, ds),
                  ConfigError);
}

TEST_CASE("harness: reports are deterministic and audit clean") {
  testutil::TmpDir tmp("harness");
  const auto ds = zero_labeled_set(16);
  auto cfg = small_config();
  cfg.output_dir = tmp.dir();

  const auto r1 = evaluate_targets(cfg, {fixed_target("v", 0)}, ds);
  const auto r2 = evaluate_targets(cfg, {fixed_target("v", 0)}, ds);
  CHECK(r1.to_json() == r2.to_json());
  REQUIRE(r1.details.size() == r2.details.size());
  for (std::size_t i = 0; i < r1.details.size(); ++i)
    CHECK(r1.details[i] == r2.details[i]);

  write_report_files(r1, tmp.dir());
  CHECK_NOTHROW(
      audit_report(r1, tmp.dir() + "/" + r1.details_filename()));

  // the sampled indices are a deterministic function of the seed
  auto cfg2 = cfg;
  cfg2.seed = 6;
  const auto r3 = evaluate_targets(cfg2, {fixed_target("v", 0)}, ds);
  bool any_diff = false;
  for (std::size_t i = 0; i < r1.details.size(); ++i) {
    if (r1.details[i].at("index") != r3.details[i].at("index"))
      any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("harness: run config file round trip") {
  testutil::TmpDir tmp("cfg");
  RunConfig cfg;
  cfg.dataset_path = "data.bin";
  cfg.bundles = {"a.bundle", "b.bundle"};
  cfg.attack_specs = {attacks::AttackSpec::parse("pgd:eps=0.031,steps=10"),
                      attacks::AttackSpec::parse("pixel:k=1")};
  cfg.sample_count = 123;
  cfg.seed = 99;
  cfg.policy = SeedPolicy::kFresh;

  const std::string path = tmp.file("run.json");
  {
    std::ofstream os(path);
    os << cfg.to_json().dump(2);
  }
  const auto loaded = RunConfig::from_file(path);
  CHECK(loaded.to_json() == cfg.to_json());
}

TEST_CASE("harness: rendered outputs have the promised shape") {
  testutil::TmpDir tmp("render");
  const auto ds = zero_labeled_set(12);
  auto cfg = small_config();
  cfg.attack_specs = {attacks::AttackSpec::parse("pixel:k=1,pop=8,gens=2"),
                      attacks::AttackSpec::parse("pixel:k=2,pop=8,gens=2")};

  const auto rep = evaluate_targets(
      cfg, {fixed_target("a", 0), fixed_target("b", 1)}, ds);

  const std::string csv = report::render_csv(rep);
  std::stringstream csv_stream(csv);
  std::string header;
  std::getline(csv_stream, header);
  CHECK(header ==
        "pipeline,attack,clean_acc,attack_acc,mean_queries,mean_linf,mean_l0");
  int csv_rows = 0;
  std::string line;
  while (std::getline(csv_stream, line)) {
    if (!line.empty()) ++csv_rows;
  }
  CHECK(csv_rows == 4);  // pipelines x attacks

  // markdown rows (header + one per cell, separator aside)
  const std::string md = report::render_markdown(rep);
  std::stringstream md_stream(md);
  int table_rows = 0;
  while (std::getline(md_stream, line)) {
    if (!line.empty() && line[0] == '|' && line.rfind("|---", 0) != 0)
      ++table_rows;
  }
  CHECK(table_rows == 2 * 2 + 1);

  const auto files1 = report::report_render(rep, tmp.dir());
  REQUIRE(!files1.empty());
  std::vector<std::string> bytes1;
  for (const auto& f : files1) bytes1.push_back(slurp(f));
  const auto files2 = report::report_render(rep, tmp.dir());
  REQUIRE(files1 == files2);
  for (std::size_t i = 0; i < files1.size(); ++i)
    CHECK(slurp(files2[i]) == bytes1[i]);
}

TEST_CASE("harness: audit rejects a tampered report") {
  testutil::TmpDir tmp("audit");
  const auto ds = zero_labeled_set(10);
  auto cfg = small_config();

  auto rep = evaluate_targets(cfg, {fixed_target("v", 0)}, ds);
  write_report_files(rep, tmp.dir());
  rep.cells[0].attack_acc += 5.0;
  CHECK_THROWS_AS(
      audit_report(rep, tmp.dir() + "/" + rep.details_filename()),
      FormatError);
}
