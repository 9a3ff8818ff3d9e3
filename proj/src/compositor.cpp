// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/compositor.hpp"

#include <algorithm>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"

namespace forge {

void CompositeConfig::validate() const {
  if (!(alpha > 0.0)) throw InvalidParams("alpha must be > 0");
  if (!(quantile > 0.0 && quantile < 1.0)) throw InvalidParams("quantile outside (0, 1)");
  if (!(epsilon_lo > 0.0 && epsilon_lo <= epsilon_hi && epsilon_hi < 2.0)) {
    throw InvalidParams("epsilon range must be nonempty within (0, 2)");
  }
  if (!(neg_uniform_frac >= 0.0 && neg_uniform_frac <= 1.0)) throw InvalidParams("neg_uniform_frac outside [0, 1]");
}

double quantile5(const GrayImage& patch, double q) { return quantile(patch.pixels(), q); }

GrayImage composite_pixels(const GrayImage& bg, const GrayImage& slice, double alpha, double epsilon, double q) {
  if (bg.width() != slice.width() || bg.height() != slice.height()) {
    throw ShapeMismatch("background and slice differ in shape");
  }
  const double floor = quantile5(bg, q);
  const double depth = alpha * stddev(bg.pixels()) * epsilon;
  GrayImage out(bg.width(), bg.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(floor, bg[i] - depth * slice[i]);
  return out;
}

SyntheticPatch composite(const GrayImage& bg, const ModelSlice& slice, const CompositeConfig& config, Rng& rng) {
  config.validate();
  if (slice.max_value > 1.0 + 1e-12) throw InvalidParams("slice must be normalized to max 1");
  const double epsilon = rng.uniform(config.epsilon_lo, config.epsilon_hi);
  SyntheticPatch patch;
  patch.pixels = composite_pixels(bg, slice.pixels, config.alpha, epsilon, config.quantile);
  patch.label = Label::positive;
  patch.provenance.slice = slice.spec;
  patch.provenance.alpha = config.alpha;
  patch.provenance.epsilon = epsilon;
  return patch;
}

SyntheticPatch make_negative(const GrayImage& bg, int expected_size) {
  if (bg.width() != expected_size || bg.height() != expected_size) {
    throw ShapeMismatch("negative patch must be " + std::to_string(expected_size) + "x" +
                        std::to_string(expected_size));
  }
  SyntheticPatch patch;
  patch.pixels = bg;
  patch.label = Label::negative;
  return patch;
}

}  // namespace forge
