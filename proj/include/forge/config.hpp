// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "forge/cell_segmenter.hpp"
#include "forge/centriole_model.hpp"
#include "forge/compositor.hpp"
#include "forge/patch_sampler.hpp"
#include "forge/slicer.hpp"
#include "forge/surrogate.hpp"

namespace forge {

struct GenerationConfig {
  long n_train_patches = 18000;
  long n_val_patches = 0;
  long n_test_patches = 2000;
  double positive_fraction = 0.5;
  std::uint64_t master_seed = 0;

  // Backgrounds: a directory of negative PNGs (one subdirectory per patient,
  // or flat with one identity per file), or the surrogate generator when
  // background_dir is empty.
  std::string background_dir;
  int surrogate_count = 40;
  double test_identity_fraction = 0.2;
  double val_identity_fraction = 0.0;
  int threads = 0;  // 0 = hardware concurrency

  ModelParams model;
  SlicerConfig slicer;
  SegmenterConfig segmenter;
  SamplerConfig sampler;
  CompositeConfig composite;
  SurrogateConfig surrogate;

  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Sub-config keys are
/// prefixed, e.g. `slicer.blur_sigma_px`. Unknown keys throw ParseError.
GenerationConfig parse_generation_config(std::string_view text);
GenerationConfig load_generation_config(const std::filesystem::path& path);

/// Canonical text for a config; parse_generation_config round-trips it.
std::string format_generation_config(const GenerationConfig& config);

}  // namespace forge
