// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "forge/cell_segmenter.hpp"
#include "forge/image.hpp"
#include "forge/random.hpp"

namespace forge {

struct SamplerConfig {
  int box_size = 60;
  int grid_stride_px = 30;
  double cover_min = 0.9;
  double sigma_floor_fraction = 1e-3;  // of the image's intensity range
  double weight_exponent = 4.0;

  void validate() const;
};

struct PatchCandidate {
  Box box;
  double sigma = 0.0;
  double coverage = 0.0;  // fraction of box pixels inside the cell mask
  double weight = 0.0;
};

/// All stride-aligned boxes lying inside the image with mask coverage at
/// least cover_min. sigma is clamped below at the floor. Weights are left
/// at zero. Throws NoCandidates, ShapeMismatch.
std::vector<PatchCandidate> enumerate_boxes(const GrayImage& image, const CellMask& mask, const SamplerConfig& config);

/// weight_i = sigma_i^-k / sum_j sigma_j^-k. Throws EmptyCandidateSet.
std::vector<PatchCandidate> normalize_weights(std::vector<PatchCandidate> candidates, double exponent = 4.0);

/// Categorical draw over the cumulative weights. Throws EmptyCandidateSet.
const PatchCandidate& sample_patch(const std::vector<PatchCandidate>& candidates, Rng& rng);

/// Draw ignoring weights.
const PatchCandidate& sample_uniform(const std::vector<PatchCandidate>& candidates, Rng& rng);

}  // namespace forge
