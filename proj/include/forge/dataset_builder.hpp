// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "forge/cell_segmenter.hpp"
#include "forge/config.hpp"
#include "forge/manifest.hpp"
#include "forge/patch_sampler.hpp"

namespace forge {

/// A negative screening image (real or surrogate) prepared for sampling.
struct Background {
  std::string id;
  std::string identity;
  RecordKind kind = RecordKind::surrogate_image;
  Split split = Split::train;
  std::uint64_t seed = 0;  // generator seed for surrogates
  GrayImage image;
  std::filesystem::path source;  // empty for in-memory surrogates
  std::vector<PatchCandidate> candidates;  // sigma-weighted
};

/// One planned output record, before pixels exist.
struct PatchPlan {
  long index = 0;
  std::string id;
  Split split = Split::train;
  Label label = Label::negative;
  std::uint64_t seed = 0;
};

/// Labels interleaved so every prefix of a split stays balanced; record j
/// is positive iff floor((j + 1) f) > floor(j f).
std::vector<PatchPlan> plan_patches(const GenerationConfig& config);

/// Holds the voxel model and the segmented backgrounds; produces patches
/// from per-record seeds. Thread-safe after construction.
class PatchForge {
 public:
  explicit PatchForge(GenerationConfig config);

  const GenerationConfig& config() const { return config_; }
  const VoxelModel& model() const { return model_; }
  const std::vector<Background>& backgrounds() const { return backgrounds_; }

  /// Deterministic in (split, label, seed).
  SyntheticPatch make_patch(Split split, Label label, std::uint64_t seed) const;

  /// Pixels of a stored patch record rebuilt from its seed, quantized as
  /// written to disk.
  GrayImage regenerate(const ManifestRecord& record) const;

 private:
  void load_backgrounds();
  void assign_splits();

  GenerationConfig config_;
  VoxelModel model_;
  std::vector<Background> backgrounds_;
  std::map<Split, std::vector<std::size_t>> pools_;
};

/// Writes config.txt, manifest.jsonl, patches/<split>/<id>.png and, for
/// surrogate backgrounds, backgrounds/<id>.png under out_dir.
DatasetManifest generate_patch_dataset(const GenerationConfig& config, const std::filesystem::path& out_dir);

struct ManifestStats {
  std::map<std::string, long> counts;  // "split/kind/label" -> records
  std::map<std::string, long> identities;  // split -> distinct identities
};

ManifestStats summarize(const DatasetManifest& manifest);
std::string format_stats(const ManifestStats& stats);

}  // namespace forge
