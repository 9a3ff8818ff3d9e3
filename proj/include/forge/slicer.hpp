// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "forge/centriole_model.hpp"
#include "forge/image.hpp"
#include "forge/random.hpp"

namespace forge {

/// Provenance of one model slice: how the model was turned, which slab was
/// summed, how it was blurred and where the crop window landed.
struct SliceSpec {
  std::array<double, 3> angles{0.0, 0.0, 0.0};  // radians about x, then y, then z
  int offset_vx = 0;
  int thickness_vx = 10;
  double blur_sigma_px = 0.0;
  Box crop{};  // in projected-slab pixel coordinates; empty when uncropped

  bool operator==(const SliceSpec&) const = default;
};

/// Non-negative 2D projection of a slab of the model.
struct ModelSlice {
  GrayImage pixels;
  double max_value = 0.0;
  SliceSpec spec;

  int width() const { return pixels.width(); }
  int height() const { return pixels.height(); }
  double total_mass() const;

  /// Scales pixels so the maximum is exactly 1. An all-zero slice is left
  /// untouched.
  void normalize();
};

struct SlicerConfig {
  int thickness_vx = 10;
  double blur_sigma_px = 1.0;
  double mass_min_fraction = 0.05;  // of the largest slab mass for the drawn orientation
  int crop_size = 60;
  int jitter_px = 10;
  int max_retries = 100;
};

/// Rotation matrix R = Rz * Ry * Rx (x applied first), row-major.
std::array<double, 9> rotation_matrix(const std::array<double, 3>& angles);

/// Resamples the grid about its centre voxel by inverse mapping with
/// trilinear interpolation; samples outside the grid read as zero.
VoxelModel rotate_model(const VoxelModel& model, const std::array<double, 3>& angles);

/// pixels(x, y) = sum of grid(x, y, z) for z in [offset, offset + thickness).
ModelSlice extract_and_project(const VoxelModel& model, int offset_vx, int thickness_vx);

ModelSlice blur(const ModelSlice& slice, double sigma_px);

/// Draws a random orientation and slab, rejecting slabs lighter than
/// mass_min_fraction of the heaviest slab, then blurs, crops around the
/// intensity centroid with random jitter and normalizes to max 1.
/// Throws ExhaustedRetries after config.max_retries rejections.
ModelSlice sample_random_slice(const VoxelModel& model, Rng& rng, const SlicerConfig& config);

/// Recomputes a slice deterministically from its recorded spec.
ModelSlice render_slice(const VoxelModel& model, const SliceSpec& spec);

}  // namespace forge
