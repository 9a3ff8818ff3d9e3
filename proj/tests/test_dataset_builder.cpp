// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "forge/dataset_builder.hpp"
#include "forge/errors.hpp"
#include "forge/imaging.hpp"
#include "forge/png_io.hpp"
#include "forge/surrogate.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

GenerationConfig small_config() {
  GenerationConfig c;
  c.n_train_patches = 24;
  c.n_test_patches = 9;
  c.master_seed = 7;
  c.surrogate_count = 5;
  c.surrogate.width = c.surrogate.height = 320;
  c.surrogate.cell_radius_min = 90;
  c.surrogate.cell_radius_max = 120;
  c.threads = 2;
  return c;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "forge_test_dataset" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("plan balances every split") {
  GenerationConfig c;
  const auto plans = plan_patches(c);
  long train_pos = 0, test_pos = 0;
  for (const auto& p : plans) {
    if (p.label != Label::positive) continue;
    (p.split == Split::train ? train_pos : test_pos)++;
  }
  CHECK(plans.size() == 20000);
  CHECK(train_pos == 9000);
  CHECK(test_pos == 1000);

  c.n_train_patches = 101;
  c.n_test_patches = 7;
  c.positive_fraction = 0.3;
  long pos = 0;
  for (const auto& p : plan_patches(c)) pos += p.split == Split::train && p.label == Label::positive;
  CHECK(std::abs(pos - 101 * 0.3) <= 1.0);
}

TEST_CASE("per-record seeds differ and depend on the master seed") {
  auto c = small_config();
  const auto a = plan_patches(c);
  c.master_seed = 8;
  const auto b = plan_patches(c);
  std::set<std::uint64_t> seeds;
  for (const auto& p : a) seeds.insert(p.seed);
  CHECK(seeds.size() == a.size());
  CHECK(a[0].seed != b[0].seed);
}

TEST_CASE("generation is reproducible, labeled, split-disjoint and regenerable") {
  const auto cfg = small_config();
  const auto dir_a = fresh_dir("a");
  const auto dir_b = fresh_dir("b");
  const auto ma = generate_patch_dataset(cfg, dir_a);
  auto cfg_single = cfg;
  cfg_single.threads = 1;
  const auto mb = generate_patch_dataset(cfg_single, dir_b);

  CHECK(slurp(dir_a / "manifest.jsonl") == slurp(dir_b / "manifest.jsonl"));
  for (const auto& r : ma.records) CHECK(slurp(dir_a / r.path) == slurp(dir_b / r.path));
  CHECK(read_manifest(dir_a / "manifest.jsonl") == ma);

  long patches = 0;
  std::map<Split, long> pos, all;
  for (const auto& r : ma.records) {
    CHECK(fs::exists(dir_a / r.path));
    if (r.kind != RecordKind::synthetic_patch) {
      CHECK(r.kind == RecordKind::surrogate_image);
      continue;
    }
    ++patches;
    ++all[r.split];
    pos[r.split] += r.label == Label::positive;
    CHECK(r.provenance.contains("box"));
    CHECK(r.provenance.contains("background"));
    CHECK(r.provenance.contains("slice") == (r.label == Label::positive));
    const auto img = read_png(dir_a / r.path);
    CHECK(img.width() == 60);
    CHECK(img.height() == 60);
  }
  CHECK(patches == 33);
  CHECK(pos[Split::train] == 12);
  CHECK(std::abs(pos[Split::test] - 4.5) <= 1.0);

  const PatchForge forge(cfg);
  for (const auto& r : ma.records) {
    if (r.kind != RecordKind::synthetic_patch) continue;
    CHECK(forge.regenerate(r) == read_png(dir_a / r.path));
  }
}

TEST_CASE("positives darken part of their background; negatives copy it") {
  const PatchForge forge(small_config());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pos = forge.make_patch(Split::train, Label::positive, seed);
    const auto neg = forge.make_patch(Split::train, Label::negative, seed);
    REQUIRE(pos.provenance.slice.has_value());
    CHECK_FALSE(neg.provenance.slice.has_value());
    for (const auto& bg : forge.backgrounds()) {
      if (bg.id != neg.provenance.source_id) continue;
      CHECK(neg.pixels == crop(bg.image, neg.provenance.box));
    }
    for (const auto& bg : forge.backgrounds()) {
      if (bg.id != pos.provenance.source_id) continue;
      const auto src = crop(bg.image, pos.provenance.box);
      const double floor = quantile5(src);
      long darkened = 0;
      for (std::size_t i = 0; i < src.size(); ++i) {
        CHECK(pos.pixels[i] <= std::max(src[i], floor));
        darkened += pos.pixels[i] < src[i];
      }
      CHECK(darkened > 0);
    }
  }
}

TEST_CASE("real background directories: identities from subdirectories") {
  const auto root = fresh_dir("real");
  SurrogateConfig sc;
  sc.width = sc.height = 256;
  sc.cell_radius_min = 70;
  sc.cell_radius_max = 90;
  for (int i = 0; i < 6; ++i) {
    const auto s = generate_surrogate(sc, i);
    const auto dir = root / ("patient" + std::to_string(i % 3));
    fs::create_directories(dir);
    write_png16(dir / (s.id + ".png"), s.image);
  }
  auto cfg = small_config();
  cfg.background_dir = root.string();
  cfg.test_identity_fraction = 0.34;
  const auto out = fresh_dir("real_out");
  const auto m = generate_patch_dataset(cfg, out);
  std::set<std::string> identities;
  for (const auto& r : m.records) {
    identities.insert(r.identity);
    if (r.kind == RecordKind::synthetic_patch) continue;
    CHECK(r.kind == RecordKind::real_image);
    CHECK(fs::exists(out / r.path));
  }
  CHECK(identities == std::set<std::string>{"patient0", "patient1", "patient2"});
}

TEST_CASE("a background without a cell is reported by id") {
  const auto root = fresh_dir("blank");
  write_png16(root / "a.png", GrayImage(128, 128, 1000.0));
  write_png16(root / "b.png", GrayImage(128, 128, 1000.0));
  auto cfg = small_config();
  cfg.background_dir = root.string();
  try {
    PatchForge forge(cfg);
    FAIL("expected NoCellFound");
  } catch (const NoCellFound& e) {
    CHECK(std::string(e.what()).find("img-a") != std::string::npos);
  }
}

TEST_CASE("stats summary") {
  DatasetManifest m;
  ManifestRecord r;
  r.id = "a";
  r.identity = "p1";
  m.records.push_back(r);
  r.id = "b";
  r.label = Label::positive;
  m.records.push_back(r);
  const auto s = summarize(m);
  CHECK(s.counts.at("train/synthetic-patch/negative") == 1);
  CHECK(s.counts.at("train/synthetic-patch/positive") == 1);
  CHECK(s.identities.at("train") == 1);
  CHECK(format_stats(s).find("train/identities 1") != std::string::npos);
}
