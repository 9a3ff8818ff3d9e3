// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace forge {

/// Geometry of the centriole pair: two equal hollow cylinders with
/// orthogonal axes. All lengths in nanometres.
struct ModelParams {
  double diameter_nm = 250.0;
  double length_nm = 500.0;
  double wall_thickness_nm = 20.0;
  double resolution_nm_per_voxel = 20.0;
  double pair_gap_nm = 100.0;  // clearance between the two outer shells
  int antialias_samples = 3;

  /// Throws InvalidParams if any invariant is violated.
  void validate() const;
};

/// Cube of soft occupancy values in [0, 1]. Voxel (x, y, z) is stored at
/// (z * side + y) * side + x; its centre sits at origin + index * resolution
/// in model space (nm). The model is centred on the middle voxel.
class VoxelModel {
 public:
  VoxelModel() = default;
  VoxelModel(int side, double resolution_nm, double origin_nm);

  int side() const { return side_; }
  double resolution_nm() const { return resolution_; }
  double origin_nm() const { return origin_; }
  double voxel_volume_nm3() const { return resolution_ * resolution_ * resolution_; }

  double& at(int x, int y, int z) { return grid_[index(x, y, z)]; }
  double at(int x, int y, int z) const { return grid_[index(x, y, z)]; }

  std::vector<double>& grid() { return grid_; }
  const std::vector<double>& grid() const { return grid_; }

  bool operator==(const VoxelModel&) const = default;

 private:
  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * side_ + y) * side_ + x;
  }

  int side_ = 0;
  double resolution_ = 1.0;
  double origin_ = 0.0;
  std::vector<double> grid_;
};

/// Voxelizes the pair. Cylinder A runs along z, cylinder B along x beside
/// A's mid-height, displaced along y so the shells are pair_gap_nm apart.
VoxelModel build_model(const ModelParams& params);

/// Sum of occupancy times voxel volume, in nm^3.
double occupancy_mass(const VoxelModel& model);

/// Analytic volume of both shells, in nm^3.
double analytic_shell_volume(const ModelParams& params);

/// Writes one 8-bit PNG per z-plane plus `header.txt` with shape and
/// resolution.
void export_model_slices(const VoxelModel& model, const std::filesystem::path& dir);

}  // namespace forge
