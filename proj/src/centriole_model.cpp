// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/centriole_model.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include "forge/errors.hpp"
#include "forge/image.hpp"
#include "forge/png_io.hpp"

namespace forge {

void ModelParams::validate() const {
  if (!(diameter_nm > 0 && length_nm > 0 && wall_thickness_nm > 0 && resolution_nm_per_voxel > 0 &&
        pair_gap_nm > 0)) {
    throw InvalidParams("model lengths must be positive");
  }
  if (wall_thickness_nm > diameter_nm / 2.0) throw InvalidParams("wall thicker than cylinder radius");
  if (diameter_nm / resolution_nm_per_voxel < 8.0) {
    throw InvalidParams("resolution too coarse: fewer than 8 voxels across the diameter");
  }
  if (antialias_samples < 1) throw InvalidParams("antialias_samples must be >= 1");
}

VoxelModel::VoxelModel(int side, double resolution_nm, double origin_nm)
    : side_(side), resolution_(resolution_nm), origin_(origin_nm),
      grid_(static_cast<std::size_t>(side) * side * side, 0.0) {}

namespace {

struct PairGeometry {
  double outer_sq;
  double inner_sq;
  double half_length;
  double axis_offset;  // |y| of each cylinder axis

  bool inside(double x, double y, double z) const {
    // A: axis along z through (0, -axis_offset).
    if (std::abs(z) <= half_length) {
      const double dy = y + axis_offset;
      const double r2 = x * x + dy * dy;
      if (r2 <= outer_sq && r2 >= inner_sq) return true;
    }
    // B: axis along x through (y = +axis_offset, z = 0).
    if (std::abs(x) <= half_length) {
      const double dy = y - axis_offset;
      const double r2 = dy * dy + z * z;
      if (r2 <= outer_sq && r2 >= inner_sq) return true;
    }
    return false;
  }
};

}  // namespace

VoxelModel build_model(const ModelParams& p) {
  p.validate();
  const double radius = p.diameter_nm / 2.0;
  const double inner = radius - p.wall_thickness_nm;
  const PairGeometry geom{radius * radius, inner * inner, p.length_nm / 2.0, radius + p.pair_gap_nm / 2.0};

  const double extent = std::max({p.length_nm, 2.0 * radius, 2.0 * (geom.axis_offset + radius)});
  int side = static_cast<int>(std::ceil(std::sqrt(3.0) * extent / p.resolution_nm_per_voxel));
  if (side % 2 == 0) ++side;
  const double res = p.resolution_nm_per_voxel;
  VoxelModel model(side, res, -0.5 * (side - 1) * res);

  const int s = p.antialias_samples;
  std::vector<double> offsets(s);
  for (int i = 0; i < s; ++i) offsets[i] = ((i + 0.5) / s - 0.5) * res;
  const double inv = 1.0 / (static_cast<double>(s) * s * s);
  const double reach_x = std::max(geom.half_length, radius) + res;
  const double reach_y = geom.axis_offset + radius + res;

  for (int z = 0; z < side; ++z) {
    const double cz = model.origin_nm() + z * res;
    if (std::abs(cz) > reach_x) continue;
    for (int y = 0; y < side; ++y) {
      const double cy = model.origin_nm() + y * res;
      if (std::abs(cy) > reach_y) continue;
      for (int x = 0; x < side; ++x) {
        const double cx = model.origin_nm() + x * res;
        if (std::abs(cx) > reach_x) continue;
        int hits = 0;
        for (double oz : offsets)
          for (double oy : offsets)
            for (double ox : offsets) hits += geom.inside(cx + ox, cy + oy, cz + oz);
        model.at(x, y, z) = hits * inv;
      }
    }
  }
  return model;
}

double occupancy_mass(const VoxelModel& model) {
  const auto& g = model.grid();
  return std::accumulate(g.begin(), g.end(), 0.0) * model.voxel_volume_nm3();
}

double analytic_shell_volume(const ModelParams& p) {
  const double radius = p.diameter_nm / 2.0;
  const double inner = radius - p.wall_thickness_nm;
  return 2.0 * std::numbers::pi * (radius * radius - inner * inner) * p.length_nm;
}

void export_model_slices(const VoxelModel& model, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const int n = model.side();
  for (int z = 0; z < n; ++z) {
    GrayImage plane(n, n);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) plane.at(x, y) = model.at(x, y, z) * 255.0;
    char name[32];
    std::snprintf(name, sizeof name, "z%04d.png", z);
    write_png8(dir / name, plane);
  }
  std::ofstream header(dir / "header.txt");
  if (!header) throw IoError("cannot write " + (dir / "header.txt").string());
  header << "shape " << n << " " << n << " " << n << "\n"
         << "resolution_nm_per_voxel " << model.resolution_nm() << "\n"
         << "origin_nm " << model.origin_nm() << "\n";
}

}  // namespace forge
