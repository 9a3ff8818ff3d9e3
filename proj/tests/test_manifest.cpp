// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "forge/errors.hpp"
#include "forge/manifest.hpp"
#include "forge/random.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "forge_test_manifest";
  fs::create_directories(dir);
  return dir / name;
}

ManifestRecord random_record(Rng& rng, int i) {
  ManifestRecord r;
  r.id = "rec-" + std::to_string(i);
  r.path = "patches/x/" + r.id + ".png";
  r.label = rng.uniform01() < 0.5 ? Label::positive : Label::negative;
  r.kind = static_cast<RecordKind>(rng.uniform_int(0, 2));
  const int identity = static_cast<int>(rng.uniform_int(0, 9));
  r.identity = "id-" + std::to_string(identity);
  r.split = static_cast<Split>(identity % 3);  // keeps identities within one split
  r.seed = rng.next();
  SliceSpec spec;
  spec.angles = {rng.uniform(0, 6.3), rng.uniform(0, 6.3), rng.uniform(0, 6.3)};
  spec.offset_vx = static_cast<int>(rng.uniform_int(0, 40));
  spec.blur_sigma_px = rng.uniform(0, 2);
  spec.crop = Box{int(rng.uniform_int(-10, 10)), int(rng.uniform_int(-10, 10)), 60, 60};
  r.provenance = {{"slice", to_json(spec)}, {"epsilon", rng.uniform(0.9, 1.1)}, {"note", "ünïcode"}};
  return r;
}

}  // namespace

TEST_CASE("empty manifest round-trips") {
  const auto path = scratch("empty.jsonl");
  write_manifest(DatasetManifest{}, path);
  CHECK(read_manifest(path).records.empty());
}

TEST_CASE("random records round-trip field by field") {
  Rng rng(12);
  DatasetManifest m;
  for (int i = 0; i < 100; ++i) m.records.push_back(random_record(rng, i));
  const auto path = scratch("random.jsonl");
  write_manifest(m, path);
  const auto back = read_manifest(path);
  REQUIRE(back.records.size() == m.records.size());
  for (std::size_t i = 0; i < m.records.size(); ++i) {
    CHECK(back.records[i] == m.records[i]);
    const auto spec = slice_spec_from_json(back.records[i].provenance.at("slice"));
    CHECK(spec == slice_spec_from_json(m.records[i].provenance.at("slice")));
  }
}

TEST_CASE("duplicate ids fail to parse") {
  const auto path = scratch("dup.jsonl");
  Rng rng(1);
  const auto r = random_record(rng, 0);
  {
    std::ofstream out(path);
    out << record_to_line(r) << "\n" << record_to_line(r) << "\n";
  }
  CHECK_THROWS_AS(read_manifest(path), ParseError);
  CHECK_THROWS_AS(write_manifest(DatasetManifest{{r, r}}, scratch("dup2.jsonl")), ParseError);
}

TEST_CASE("an identity straddling splits fails to parse") {
  Rng rng(2);
  auto a = random_record(rng, 0);
  auto b = random_record(rng, 1);
  b.identity = a.identity;
  b.split = a.split == Split::train ? Split::test : Split::train;
  const auto path = scratch("straddle.jsonl");
  {
    std::ofstream out(path);
    out << record_to_line(a) << "\n" << record_to_line(b) << "\n";
  }
  CHECK_THROWS_AS(read_manifest(path), ParseError);
}

TEST_CASE("malformed lines report ParseError") {
  const auto path = scratch("bad.jsonl");
  {
    std::ofstream out(path);
    out << "{\"id\": \"x\"\n";
  }
  CHECK_THROWS_AS(read_manifest(path), ParseError);
  CHECK_THROWS_AS(record_from_line(R"({"id":"a","path":"p","label":"maybe","kind":"synthetic-patch",)"
                                   R"("identity":"i","split":"train","seed":1,"generator_version":"v","provenance":{}})"),
                  ParseError);
  CHECK_THROWS_AS(read_manifest(scratch("does-not-exist.jsonl")), IoError);
}
