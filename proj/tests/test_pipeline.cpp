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

#include <cmath>

#include "doctest.h"
#include "percept/errors.hpp"
#include "percept/pipeline.hpp"
#include "percept/synth.hpp"
#include "percept/train.hpp"
#include "testutil.hpp"

using namespace percept;
using namespace percept::pipeline;
using corruption::NoiseSpec;
using imaging::Image;
using models::Classifier;
using models::OracleRecreator;

namespace {

std::shared_ptr<const Classifier> make_classifier(int h = 16, int w = 16,
                                                  int classes = 4,
                                                  std::uint64_t seed = 1) {
  Rng rng(seed);
  return std::make_shared<Classifier>(h, w, classes, 4, rng);
}

// recreator stub with a deliberately wrong output shape
class BadShapeRecreator : public models::Recreator {
 public:
  std::string kind() const override { return "bad"; }
  Image predict(const Image& img) const override {
    return Image(img.h + 1, img.w, 0.5);
  }
  Image input_grad(const Image& img, const Image&) const override {
    return Image(img.h, img.w, 0.0);
  }
};

}  // namespace

TEST_CASE("pipeline: identity variant is transparent") {
  auto cls = make_classifier();
  const auto pp = PerceptualPipeline::identity(cls);
  Rng ir(2);
  const Image img = testutil::random_image(16, 16, ir);

  Rng r1(3);
  CHECK(pp.recreate(img, r1).data == img.data);
  Rng r2(3);
  CHECK(pp.classify(img, r2) == cls->probs(img));
  CHECK_FALSE(pp.stochastic());
}

TEST_CASE("pipeline: fir with a perfect inpainter reconstructs exactly") {
  auto cls = make_classifier();
  Rng ir(5);
  const Image x = testutil::random_image(16, 16, ir);

  Rng mr(6);
  auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
  auto oracle = std::make_shared<OracleRecreator>(OracleRecreator::fixed(x));
  const auto pp = PerceptualPipeline::fir(cls, oracle, set);

  Rng r(7);
  CHECK(pp.recreate(x, r).data == x.data);
}

TEST_CASE("pipeline: fir with a zero inpainter yields the zero image") {
  auto cls = make_classifier();
  Rng mr(8);
  auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
  auto zeros = std::make_shared<OracleRecreator>(
      OracleRecreator::Mode::kConstant, 0.0);
  const auto pp = PerceptualPipeline::fir(cls, zeros, set);

  Rng ir(9), r(10);
  const Image out = pp.recreate(testutil::random_image(16, 16, ir), r);
  CHECK(std::all_of(out.data.begin(), out.data.end(),
                    [](double v) { return v == 0.0; }));
}

TEST_CASE("pipeline: fir pixel provenance") {
  // every recreated pixel equals the matching pixel of the part whose mask
  // owns it
  auto cls = make_classifier();
  Rng mr(11);
  auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
  Rng init(12);
  auto inp = std::make_shared<models::Inpainter>(16, 16, 4, init);
  const auto pp = PerceptualPipeline::fir(cls, inp, set);

  Rng ir(13);
  const Image x = testutil::random_image(16, 16, ir);
  Rng r(14);
  const Image rec = pp.recreate(x, r);

  for (int k = 0; k < set.count(); ++k) {
    const Image part = inp->predict(masks::mask_out(x, set.masks[k]));
    for (int y = 0; y < 16; ++y) {
      for (int xx = 0; xx < 16; ++xx) {
        if (!set.masks[k].at(y, xx)) continue;
        for (int c = 0; c < 3; ++c)
          CHECK(rec.at(y, xx, c) == part.at(y, xx, c));
      }
    }
  }
}

TEST_CASE("pipeline: nsr with degenerate corruption and identity recreator "
          "matches the classifier") {
  auto cls = make_classifier();
  auto identity = std::make_shared<OracleRecreator>(
      OracleRecreator::Mode::kIdentity);
  const auto pp =
      PerceptualPipeline::nsr(cls, identity, NoiseSpec::gaussian(0, 0), 1);

  Rng ir(20);
  const Image img = testutil::random_image(16, 16, ir);
  Rng r(21);
  CHECK(pp.classify(img, r) == cls->probs(img));
}

TEST_CASE("pipeline: nsr shape chain with a real generator") {
  auto cls = make_classifier();
  Rng gr(22);
  auto gen = std::make_shared<models::SrGenerator>(16, 16, 2, 4, gr);
  const auto pp = PerceptualPipeline::nsr(
      cls, gen, NoiseSpec::gaussian(0, 0.01), 2);

  Rng ir(23);
  const Image img = testutil::random_image(16, 16, ir);
  Rng r(24);
  const auto corrupted = pp.corrupt(img, r);
  REQUIRE(corrupted.size() == 1);
  CHECK(corrupted[0].h == 16);
  const Image hr = gen->predict(corrupted[0]);
  CHECK(hr.h == 32);
  CHECK(hr.w == 32);
  const Image rec = pp.recreate_from(corrupted);
  CHECK(rec.h == 16);
  CHECK(rec.w == 16);
}

TEST_CASE("pipeline: nsr stochastic defense draws per call") {
  auto cls = make_classifier();
  auto identity = std::make_shared<OracleRecreator>(
      OracleRecreator::Mode::kIdentity);
  const auto pp = PerceptualPipeline::nsr(
      cls, identity, NoiseSpec::gaussian(0, 0.01), 1);
  CHECK(pp.stochastic());

  Rng ir(30);
  const Image img = testutil::random_image(16, 16, ir);

  Rng a1(31), a2(31);
  CHECK(pp.classify(img, a1) == pp.classify(img, a2));  // same seed, same answer
  Rng a3(31), b(32);
  CHECK(pp.classify(img, a3) != pp.classify(img, b));   // different seed differs
}

TEST_CASE("pipeline: build-time configuration errors") {
  auto cls = make_classifier();  // 16x16

  SUBCASE("fir mask set size mismatch") {
    Rng mr(40);
    auto set = masks::generate_mask_set(8, 8, 4, 4, mr);
    auto oracle = std::make_shared<OracleRecreator>(
        OracleRecreator::Mode::kIdentity);
    CHECK_THROWS_AS(PerceptualPipeline::fir(cls, oracle, set), ConfigError);
  }
  SUBCASE("nsr factor does not match the generator") {
    auto identity = std::make_shared<OracleRecreator>(
        OracleRecreator::Mode::kIdentity);  // scale factor 1
    CHECK_THROWS_AS(
        PerceptualPipeline::nsr(cls, identity, NoiseSpec::none(), 2),
        ConfigError);
  }
  SUBCASE("recreator output shape mismatch") {
    auto bad = std::make_shared<BadShapeRecreator>();
    CHECK_THROWS_AS(PerceptualPipeline::nsr(cls, bad, NoiseSpec::none(), 1),
                    ConfigError);
    Rng mr(41);
    auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
    CHECK_THROWS_AS(PerceptualPipeline::fir(cls, bad, set), ConfigError);
  }
  SUBCASE("missing components") {
    CHECK_THROWS_AS(PerceptualPipeline::identity(nullptr), ConfigError);
  }
}

TEST_CASE("pipeline: wrong input shape is a ShapeError") {
  auto cls = make_classifier();
  const auto pp = PerceptualPipeline::identity(cls);
  Rng r(42);
  Rng ir(43);
  const Image wrong = testutil::random_image(8, 8, ir);
  CHECK_THROWS_AS(pp.classify(wrong, r), ShapeError);
}

TEST_CASE("pipeline: corruption stage owns its buffers (taint test)") {
  auto cls = make_classifier();
  Rng mr(50);
  auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
  Rng init(51);
  auto inp = std::make_shared<models::Inpainter>(16, 16, 4, init);
  const auto pp = PerceptualPipeline::fir(cls, inp, set);

  Rng ir(52);
  Image x = testutil::random_image(16, 16, ir);
  Rng r1(53);
  const Image expected = pp.recreate(x, r1);

  Rng r2(53);
  const auto corrupted = pp.corrupt(x, r2);
  // taint the raw input after the corruption stage
  std::fill(x.data.begin(), x.data.end(), 0.123);
  const Image rec = pp.recreate_from(corrupted);
  CHECK(rec.data == expected.data);
}

TEST_CASE("pipeline: bundle save/load round trip") {
  testutil::TmpDir tmp("bundle");
  Rng ir(60);
  const Image img = testutil::random_image(16, 16, ir);

  SUBCASE("identity") {
    auto pp = PerceptualPipeline::identity(make_classifier());
    pp.set_name("vanilla");
    const std::string path = tmp.file("id.bundle");
    pp.save(path);
    const auto loaded = PerceptualPipeline::load(path);
    CHECK(loaded.name() == "vanilla");
    Rng r1(61), r2(61);
    CHECK(pp.classify(img, r1) == loaded.classify(img, r2));
  }
  SUBCASE("fir") {
    Rng mr(62);
    auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
    Rng init(63);
    auto inp = std::make_shared<models::Inpainter>(16, 16, 4, init);
    auto pp = PerceptualPipeline::fir(make_classifier(), inp, set);
    const std::string path = tmp.file("fir.bundle");
    pp.save(path);
    const auto loaded = PerceptualPipeline::load(path);
    CHECK(loaded.variant() == Variant::kFir);
    CHECK(loaded.mask_set().grid == 4);
    Rng r1(64), r2(64);
    CHECK(pp.classify(img, r1) == loaded.classify(img, r2));
  }
  SUBCASE("nsr") {
    Rng gr(65);
    auto gen = std::make_shared<models::SrGenerator>(16, 16, 2, 4, gr);
    auto pp = PerceptualPipeline::nsr(make_classifier(), gen,
                                      NoiseSpec::gaussian(0, 0.01), 2);
    const std::string path = tmp.file("nsr.bundle");
    pp.save(path);
    const auto loaded = PerceptualPipeline::load(path);
    CHECK(loaded.variant() == Variant::kNsr);
    Rng r1(66), r2(66);
    CHECK(pp.classify(img, r1) == loaded.classify(img, r2));
  }
}

TEST_CASE("pipeline: the sr ablation only changes the corruption") {
  Rng gr(70);
  auto gen = std::make_shared<models::SrGenerator>(16, 16, 2, 4, gr);
  auto nsr = PerceptualPipeline::nsr(make_classifier(), gen,
                                     NoiseSpec::gaussian(0, 0.01), 2);
  nsr.set_name("nsr");
  const auto sr = nsr.without_corruption();

  CHECK_FALSE(sr.stochastic());
  CHECK(sr.name() == "nsr-sr");
  auto m_nsr = nsr.manifest();
  auto m_sr = sr.manifest();
  CHECK(m_nsr["delta"] != m_sr["delta"]);
  m_nsr.erase("delta");
  m_sr.erase("delta");
  m_nsr.erase("name");
  m_sr.erase("name");
  CHECK(m_nsr == m_sr);

  // identity pipelines cannot drop corruption
  const auto idp = PerceptualPipeline::identity(make_classifier());
  CHECK_THROWS_AS(idp.without_corruption(), ParamError);
}

TEST_CASE("pipeline: end-to-end gradients match finite differences") {
  Rng cr(80);
  auto cls = std::make_shared<Classifier>(16, 16, 3, 4, cr);
  Rng ir(81);
  const Image img = testutil::random_image(16, 16, ir);
  const int label = 1;

  auto check_gradient = [&](const PerceptualPipeline& pp,
                            std::uint64_t seed) {
    const Image grad = pp.loss_input_grad(img, label, Rng(seed));
    auto loss_of = [&](const Image& x) {
      Rng r(seed);
      const auto p = pp.classify(x, r);
      return -std::log(std::max(p[label], 1e-300));
    };
    const double h = 1e-5;
    int agree = 0, total = 0;
    Rng pick(82);
    for (int probe = 0; probe < 60; ++probe) {
      const std::size_t i = pick.uniform_int(img.data.size());
      Image up = img, down = img;
      up.data[i] += h;
      down.data[i] -= h;
      const double fd = (loss_of(up) - loss_of(down)) / (2 * h);
      const double an = grad.data[i];
      ++total;
      const bool both_zero = std::fabs(fd) < 1e-9 && std::fabs(an) < 1e-9;
      if (both_zero || (fd > 0) == (an > 0)) ++agree;
    }
    CHECK(static_cast<double>(agree) / total >= 0.95);
  };

  SUBCASE("fir") {
    Rng mr(83);
    auto set = masks::generate_mask_set(16, 16, 4, 10, mr);
    Rng init(84);
    auto inp = std::make_shared<models::Inpainter>(16, 16, 4, init);
    check_gradient(PerceptualPipeline::fir(cls, inp, set), 99);
  }
  SUBCASE("nsr with noise, fixed evaluation seed") {
    Rng gr(85);
    auto gen = std::make_shared<models::SrGenerator>(16, 16, 2, 4, gr);
    check_gradient(PerceptualPipeline::nsr(
                       cls, gen, NoiseSpec::gaussian(0, 0.005), 2),
                   123);
  }
}
