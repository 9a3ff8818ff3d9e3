// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "forge/config.hpp"
#include "forge/errors.hpp"

using namespace forge;

TEST_CASE("defaults format and parse back identically") {
  GenerationConfig c;
  c.master_seed = 18446744073709551615ULL;
  c.slicer.blur_sigma_px = 0.1;
  c.background_dir = "/data/negatives";
  c.segmenter.dark_foreground = false;
  const auto text = format_generation_config(c);
  const auto back = parse_generation_config(text);
  CHECK(format_generation_config(back) == text);
  CHECK(back.master_seed == c.master_seed);
  CHECK(back.slicer.blur_sigma_px == 0.1);
  CHECK(back.segmenter.dark_foreground == false);
}

TEST_CASE("comments, blanks and overrides") {
  const auto c = parse_generation_config(
      "# a comment\n"
      "\n"
      "n_train_patches = 100   # trailing\n"
      "composite.alpha=2.5\n"
      "surrogate.noise = 0.1\r\n");
  CHECK(c.n_train_patches == 100);
  CHECK(c.composite.alpha == 2.5);
  CHECK(c.surrogate.noise == 0.1);
  CHECK(c.n_test_patches == 2000);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(parse_generation_config("nope = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_generation_config("n_train_patches = ten\n"), ParseError);
  CHECK_THROWS_AS(parse_generation_config("n_train_patches\n"), ParseError);
  CHECK_THROWS_AS(parse_generation_config("segmenter.dark_foreground = maybe\n"), ParseError);
}

TEST_CASE("validation") {
  GenerationConfig c;
  c.positive_fraction = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c = GenerationConfig{};
  c.slicer.crop_size = 50;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
  c = GenerationConfig{};
  c.n_train_patches = 0;
  CHECK_THROWS_AS(c.validate(), InvalidParams);
}
