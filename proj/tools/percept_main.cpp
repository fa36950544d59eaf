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

#include <filesystem>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "percept/errors.hpp"
#include "percept/checkpoint.hpp"
#include "percept/harness.hpp"
#include "percept/kernels.hpp"
#include "percept/masks.hpp"
#include "percept/nn.hpp"
#include "percept/noise.hpp"
#include "percept/pipeline.hpp"
#include "percept/png_io.hpp"
#include "percept/report.hpp"
#include "percept/synth.hpp"
#include "percept/train.hpp"

namespace fs = std::filesystem;
using namespace percept;

namespace {

imaging::LabeledDataset load_data(const std::string& path,
                                  imaging::Split split) {
  return harness::load_dataset_auto(path, "auto", split);
}

models::TrainConfig train_config_from(int epochs, int batch,
                                      const std::string& optimizer,
                                      double label_smoothing,
                                      const std::string& adversarial,
                                      bool augment, std::uint64_t seed,
                                      int channels) {
  models::TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.batch_size = batch;
  cfg.optimizer = models::optimizer_from_name(optimizer);
  cfg.label_smoothing = label_smoothing;
  cfg.augment = augment ? models::Augment::kFlipCrop : models::Augment::kNone;
  cfg.seed = seed;
  cfg.channels = channels;
  if (adversarial != "none") {
    const auto colon = adversarial.find(':');
    if (adversarial.substr(0, colon) != "fgsm")
      throw ParamError("cli: adversarial must be 'none' or 'fgsm:eps=<v>'");
    cfg.adversarial_fgsm = true;
    if (colon != std::string::npos) {
      const auto eq = adversarial.find('=', colon);
      if (eq == std::string::npos)
        throw ParamError("cli: expected fgsm:eps=<v>");
      cfg.fgsm_eps = std::stod(adversarial.substr(eq + 1));
    }
  }
  cfg.validate();
  return cfg;
}

harness::RunConfig run_config_from(
    const std::string& config_file, const std::string& data,
    const std::vector<std::string>& bundles,
    const std::vector<std::string>& attack_strs, int samples,
    std::uint64_t seed, const std::string& outdir,
    const std::string& policy) {
  if (!config_file.empty()) return harness::RunConfig::from_file(config_file);
  harness::RunConfig cfg;
  cfg.dataset_path = data;
  cfg.bundles = bundles;
  for (const auto& s : attack_strs)
    cfg.attack_specs.push_back(attacks::AttackSpec::parse(s));
  cfg.sample_count = samples;
  cfg.seed = seed;
  cfg.output_dir = outdir;
  cfg.policy = policy == "fresh" ? harness::SeedPolicy::kFresh
                                 : harness::SeedPolicy::kFixed;
  return cfg;
}

void print_report(const harness::EvaluationReport& rep) {
  std::cout << report::render_markdown(rep);
  std::cout << "report fingerprint: " << rep.fingerprint << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"input-recreation classifiers and their robustness harness"};
  app.require_subcommand(1);

  std::string kernels_backend = "auto";
  app.add_option("--kernels", kernels_backend,
                 "kernel backend: auto, scalar, avx2");

  // train-classifier
  auto* tc = app.add_subcommand("train-classifier",
                                "train the reference conv classifier");
  std::string tc_data, tc_out, tc_optimizer = "sgd-scheduled",
                               tc_adversarial = "none", tc_preprocess;
  int tc_epochs = 10, tc_batch = 32, tc_channels = 12;
  double tc_smoothing = 0.0;
  bool tc_augment = false;
  std::uint64_t tc_seed = 1;
  tc->add_option("--data", tc_data, "dataset path (png dir or cache)")
      ->required();
  tc->add_option("--out", tc_out, "checkpoint output path")->required();
  tc->add_option("--epochs", tc_epochs);
  tc->add_option("--batch", tc_batch);
  tc->add_option("--optimizer", tc_optimizer,
                 "adam-scheduled or sgd-scheduled");
  tc->add_option("--label-smoothing", tc_smoothing);
  tc->add_option("--adversarial", tc_adversarial, "none or fgsm:eps=<v>");
  tc->add_flag("--augment", tc_augment, "horizontal flip + crop");
  tc->add_option("--seed", tc_seed);
  tc->add_option("--channels", tc_channels);
  tc->add_option("--preprocess", tc_preprocess,
                 "pipeline bundle whose recreation preprocesses every batch");

  // train-recreator
  auto* tr = app.add_subcommand("train-recreator",
                                "train an inpainter or super-resolution generator");
  std::string tr_kind = "inpainter", tr_data, tr_out, tr_noise = "none",
              tr_optimizer = "sgd-scheduled";
  int tr_epochs = 20, tr_batch = 32, tr_channels = 12, tr_grid = 1,
      tr_masks = 10, tr_factor = 2;
  bool tr_adv_loss = false;
  std::uint64_t tr_seed = 1, tr_mask_seed = 7;
  tr->add_option("--kind", tr_kind, "inpainter or superres")->required();
  tr->add_option("--data", tr_data)->required();
  tr->add_option("--out", tr_out)->required();
  tr->add_option("--epochs", tr_epochs);
  tr->add_option("--batch", tr_batch);
  tr->add_option("--optimizer", tr_optimizer);
  tr->add_option("--channels", tr_channels);
  tr->add_option("--seed", tr_seed);
  tr->add_option("--grid", tr_grid, "mask grid cell size (inpainter)");
  tr->add_option("--masks", tr_masks, "mask count (inpainter)");
  tr->add_option("--mask-seed", tr_mask_seed);
  tr->add_option("--factor", tr_factor, "upscale factor (superres)");
  tr->add_option("--noise", tr_noise, "training corruption (superres)");
  tr->add_flag("--adversarial-loss", tr_adv_loss,
               "add the discriminator term (superres)");

  // build-pipeline
  auto* bp = app.add_subcommand("build-pipeline",
                                "bundle classifier + recreator into a pipeline");
  std::string bp_variant, bp_classifier, bp_recreator, bp_noise = "none",
              bp_out, bp_name = "pipeline";
  int bp_factor = 2;
  bp->add_option("--variant", bp_variant, "identity, nsr or fir")->required();
  bp->add_option("--classifier", bp_classifier)->required();
  bp->add_option("--recreator", bp_recreator);
  bp->add_option("--noise", bp_noise, "test-time corruption (nsr)");
  bp->add_option("--factor", bp_factor, "generator factor (nsr)");
  bp->add_option("--name", bp_name);
  bp->add_option("--out", bp_out)->required();

  // recreate
  auto* rc = app.add_subcommand("recreate",
                                "run the corruption/recreation stages on one image");
  std::string rc_bundle, rc_in, rc_out, rc_stages;
  std::uint64_t rc_seed = 1;
  rc->add_option("--bundle", rc_bundle)->required();
  rc->add_option("--in", rc_in, "input png")->required();
  rc->add_option("--out", rc_out, "recreated output png")->required();
  rc->add_option("--stages", rc_stages,
                 "directory for per-stage images (corrupted copies, parts)");
  rc->add_option("--seed", rc_seed);

  // attack / evaluate / ablations share flags
  std::string ev_config, ev_data, ev_outdir = "out", ev_policy = "fixed";
  std::vector<std::string> ev_bundles, ev_attacks;
  int ev_samples = 500;
  std::uint64_t ev_seed = 1;
  auto add_eval_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", ev_config, "run config json");
    cmd->add_option("--data", ev_data);
    cmd->add_option("--bundle", ev_bundles)->take_all();
    cmd->add_option("--attack", ev_attacks,
                    "e.g. pixel:k=1 pgd:eps=0.031 fgsm:eps=0.031")
        ->take_all();
    cmd->add_option("--samples", ev_samples);
    cmd->add_option("--seed", ev_seed);
    cmd->add_option("--out", ev_outdir);
    cmd->add_option("--policy", ev_policy, "fixed or fresh");
  };
  auto* at = app.add_subcommand("attack",
                                "attack one pipeline over a test sample");
  add_eval_flags(at);
  auto* ev = app.add_subcommand("evaluate",
                                "accuracy-under-attack over pipelines");
  add_eval_flags(ev);
  auto* an = app.add_subcommand("ablate-nsr", "paired NSR vs SR evaluation");
  add_eval_flags(an);
  auto* ag = app.add_subcommand("ablate-grid",
                                "FIR grid-size sweep on a shared sample");
  add_eval_flags(ag);

  // report
  auto* rp = app.add_subcommand("report", "render a stored report");
  std::string rp_report, rp_outdir = "out";
  rp->add_option("--report", rp_report, "report json path")->required();
  rp->add_option("--out", rp_outdir);

  // synth-dataset
  auto* sd = app.add_subcommand("synth-dataset",
                                "generate the procedural dataset cache");
  std::string sd_out;
  int sd_classes = 10, sd_per_class = 500, sd_size = 16;
  std::uint64_t sd_seed = 1;
  std::string sd_split = "train";
  sd->add_option("--out", sd_out)->required();
  sd->add_option("--classes", sd_classes);
  sd->add_option("--per-class", sd_per_class);
  sd->add_option("--size", sd_size);
  sd->add_option("--seed", sd_seed);
  sd->add_option("--split", sd_split, "train or test");

  CLI11_PARSE(app, argc, argv);

  try {
    kernels::select(kernels_backend);
    std::cerr << "kernels: " << kernels::active().name << "\n";

    if (tc->parsed()) {
      const auto ds = load_data(tc_data, imaging::Split::kTrain);
      const auto cfg =
          train_config_from(tc_epochs, tc_batch, tc_optimizer, tc_smoothing,
                            tc_adversarial, tc_augment, tc_seed, tc_channels);
      models::Preprocess preprocess;
      std::unique_ptr<pipeline::PerceptualPipeline> pre_pp;
      if (!tc_preprocess.empty()) {
        pre_pp = std::make_unique<pipeline::PerceptualPipeline>(
            pipeline::PerceptualPipeline::load(tc_preprocess));
        preprocess = [&pre_pp](const imaging::Image& img, Rng& rng) {
          return pre_pp->recreate(img, rng);
        };
      }
      models::TrainLog log;
      const auto cls = models::train_classifier(ds, cfg, preprocess, &log);
      nlohmann::json info = {{"config", cfg.to_json()},
                             {"dataset_fingerprint",
                              std::to_string(imaging::fingerprint(ds))},
                             {"final_loss", log.epoch_losses.back()}};
      if (!tc_preprocess.empty()) info["preprocess_bundle"] = tc_preprocess;
      models::save_classifier(tc_out, cls, info);
      std::cout << "trained classifier: final loss "
                << log.epoch_losses.back() << ", train acc "
                << 100.0 * models::dataset_accuracy(cls, ds) << "%\n";
    } else if (tr->parsed()) {
      const auto ds = load_data(tr_data, imaging::Split::kTrain);
      auto cfg = train_config_from(tr_epochs, tr_batch, tr_optimizer, 0.0,
                                   "none", false, tr_seed, tr_channels);
      models::TrainLog log;
      if (tr_kind == "inpainter") {
        Rng mask_rng(tr_mask_seed);
        const auto set = masks::generate_mask_set(
            ds.height(), ds.width(), tr_grid, tr_masks, mask_rng);
        const auto inp = models::train_inpainter(ds, set, cfg, &log);
        models::save_inpainter(
            tr_out, inp, set,
            {{"config", cfg.to_json()},
             {"dataset_fingerprint", std::to_string(imaging::fingerprint(ds))},
             {"final_loss", log.epoch_losses.back()}});
      } else if (tr_kind == "superres") {
        const auto noise = corruption::NoiseSpec::parse(tr_noise);
        const auto gen = models::train_superres(ds, tr_factor, noise, cfg,
                                                tr_adv_loss, &log);
        models::save_generator(
            tr_out, gen,
            {{"config", cfg.to_json()},
             {"noise", noise.to_json()},
             {"adversarial_loss", tr_adv_loss},
             {"dataset_fingerprint", std::to_string(imaging::fingerprint(ds))},
             {"final_loss", log.epoch_losses.back()}});
      } else {
        throw ParamError("cli: --kind must be inpainter or superres");
      }
      std::cout << "trained " << tr_kind << ": final loss "
                << log.epoch_losses.back() << "\n";
    } else if (bp->parsed()) {
      auto classifier = std::make_shared<models::Classifier>(
          models::load_classifier(bp_classifier));
      pipeline::PerceptualPipeline pp = [&] {
        if (bp_variant == "identity")
          return pipeline::PerceptualPipeline::identity(classifier);
        if (bp_variant == "nsr") {
          auto gen = std::make_shared<models::SrGenerator>(
              models::load_generator(bp_recreator));
          return pipeline::PerceptualPipeline::nsr(
              classifier, gen, corruption::NoiseSpec::parse(bp_noise),
              bp_factor);
        }
        if (bp_variant == "fir") {
          auto [inp, set] = models::load_inpainter(bp_recreator);
          return pipeline::PerceptualPipeline::fir(
              classifier, std::make_shared<models::Inpainter>(std::move(inp)),
              std::move(set));
        }
        throw ParamError("cli: --variant must be identity, nsr or fir");
      }();
      pp.set_name(bp_name);
      pp.save(bp_out);
      std::cout << "bundle written: " << bp_out << "\n";
    } else if (rc->parsed()) {
      const auto pp = pipeline::PerceptualPipeline::load(rc_bundle);
      const auto img = imaging::read_png(rc_in);
      Rng rng(rc_seed);
      const auto corrupted = pp.corrupt(img, rng);
      const auto recreated = pp.recreate_from(corrupted);
      imaging::write_png(rc_out, recreated);
      if (!rc_stages.empty()) {
        fs::create_directories(rc_stages);
        for (std::size_t i = 0; i < corrupted.size(); ++i) {
          imaging::write_png(
              (fs::path(rc_stages) / ("corrupted-" + std::to_string(i) + ".png"))
                  .string(),
              corrupted[i]);
        }
        imaging::write_png((fs::path(rc_stages) / "recreated.png").string(),
                           recreated);
      }
      Rng cls_rng(rc_seed);
      std::cout << "recreated " << rc_in << " -> " << rc_out
                << " (class " << pp.predict_class(img, cls_rng) << ")\n";
    } else if (at->parsed() || ev->parsed() || an->parsed() || ag->parsed()) {
      const auto cfg =
          run_config_from(ev_config, ev_data, ev_bundles, ev_attacks,
                          ev_samples, ev_seed, ev_outdir, ev_policy);
      harness::EvaluationReport rep;
      if (an->parsed()) {
        rep = harness::ablation_nsr(cfg);
      } else if (ag->parsed()) {
        rep = harness::ablation_grid(cfg);
      } else {
        rep = harness::evaluate(cfg);
      }
      print_report(rep);
      report::report_render(rep, cfg.output_dir);
    } else if (rp->parsed()) {
      const auto rep = harness::load_report(rp_report);
      const auto files = report::report_render(rep, rp_outdir);
      for (const auto& f : files) std::cout << f << "\n";
    } else if (sd->parsed()) {
      const auto ds = imaging::synthetic_dataset(
          sd_classes, sd_per_class, sd_size, sd_size, sd_seed,
          sd_split == "test" ? imaging::Split::kTest : imaging::Split::kTrain);
      imaging::save_cache(ds, sd_out);
      std::cout << "dataset: " << ds.size() << " images (" << sd_classes
                << " classes, " << sd_size << "x" << sd_size << ") -> "
                << sd_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
