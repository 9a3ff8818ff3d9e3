// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "forge/image.hpp"
#include "forge/random.hpp"
#include "forge/slicer.hpp"

namespace forge {

enum class Label { negative, positive };

struct CompositeConfig {
  double alpha = 1.0;
  double epsilon_lo = 0.9;
  double epsilon_hi = 1.1;
  double quantile = 0.05;
  double neg_uniform_frac = 0.5;  // share of negatives drawn without sigma weighting

  void validate() const;
};

struct PatchProvenance {
  std::string source_id;
  Box box;
  double box_sigma = 0.0;
  std::optional<SliceSpec> slice;  // set iff the patch is positive
  double alpha = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  bool uniform_draw = false;
};

struct SyntheticPatch {
  GrayImage pixels;
  Label label = Label::negative;
  PatchProvenance provenance;
};

/// Lower quantile used as the compositing floor (5% by default).
double quantile5(const GrayImage& patch, double q = 0.05);

/// I = max(Q(bg), bg - alpha * sigma(bg) * S * epsilon), pixelwise.
GrayImage composite_pixels(const GrayImage& bg, const GrayImage& slice, double alpha, double epsilon,
                           double q = 0.05);

/// Draws epsilon once and darkens bg by the normalized slice.
/// Throws ShapeMismatch when bg and slice differ in shape.
SyntheticPatch composite(const GrayImage& bg, const ModelSlice& slice, const CompositeConfig& config, Rng& rng);

/// Background passed through unchanged with a negative label.
SyntheticPatch make_negative(const GrayImage& bg, int expected_size = 60);

}  // namespace forge
