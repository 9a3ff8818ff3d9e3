// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"

namespace forge {

double ModelSlice::total_mass() const {
  double acc = 0.0;
  for (double v : pixels.pixels()) acc += v;
  return acc;
}

void ModelSlice::normalize() {
  double peak = 0.0;
  for (double v : pixels.pixels()) peak = std::max(peak, v);
  if (peak <= 0.0) {
    max_value = 0.0;
    return;
  }
  for (double& v : pixels.pixels()) v /= peak;
  max_value = 1.0;
}

std::array<double, 9> rotation_matrix(const std::array<double, 3>& angles) {
  const double cx = std::cos(angles[0]), sx = std::sin(angles[0]);
  const double cy = std::cos(angles[1]), sy = std::sin(angles[1]);
  const double cz = std::cos(angles[2]), sz = std::sin(angles[2]);
  // Rz * Ry * Rx
  return {cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
          sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
          -sy,     cy * sx,                cy * cx};
}

namespace {

double trilinear(const VoxelModel& m, double x, double y, double z) {
  const int n = m.side();
  const double fx0 = std::floor(x), fy0 = std::floor(y), fz0 = std::floor(z);
  const int x0 = static_cast<int>(fx0), y0 = static_cast<int>(fy0), z0 = static_cast<int>(fz0);
  if (x0 < -1 || y0 < -1 || z0 < -1 || x0 >= n || y0 >= n || z0 >= n) return 0.0;
  const double tx = x - fx0, ty = y - fy0, tz = z - fz0;
  double acc = 0.0;
  for (int dz = 0; dz < 2; ++dz) {
    const int zz = z0 + dz;
    if (zz < 0 || zz >= n) continue;
    const double wz = dz ? tz : 1.0 - tz;
    for (int dy = 0; dy < 2; ++dy) {
      const int yy = y0 + dy;
      if (yy < 0 || yy >= n) continue;
      const double wy = dy ? ty : 1.0 - ty;
      for (int dx = 0; dx < 2; ++dx) {
        const int xx = x0 + dx;
        if (xx < 0 || xx >= n) continue;
        const double wx = dx ? tx : 1.0 - tx;
        acc += wx * wy * wz * m.at(xx, yy, zz);
      }
    }
  }
  return acc;
}

}  // namespace

VoxelModel rotate_model(const VoxelModel& model, const std::array<double, 3>& angles) {
  if (angles == std::array<double, 3>{0.0, 0.0, 0.0}) return model;
  const int n = model.side();
  const double c = 0.5 * (n - 1);
  const auto r = rotation_matrix(angles);
  VoxelModel out(n, model.resolution_nm(), model.origin_nm());
  // source = R^T (p - c) + c; R^T has rows equal to the columns of R.
  for (int z = 0; z < n; ++z) {
    const double pz = z - c;
    for (int y = 0; y < n; ++y) {
      const double py = y - c;
      const double sx = r[3] * py + r[6] * pz + c - r[0] * c;
      const double sy = r[4] * py + r[7] * pz + c - r[1] * c;
      const double sz = r[5] * py + r[8] * pz + c - r[2] * c;
      for (int x = 0; x < n; ++x) {
        out.at(x, y, z) = trilinear(model, sx + r[0] * x, sy + r[1] * x, sz + r[2] * x);
      }
    }
  }
  return out;
}

ModelSlice extract_and_project(const VoxelModel& model, int offset_vx, int thickness_vx) {
  const int n = model.side();
  if (thickness_vx < 1) throw InvalidParams("slab thickness must be >= 1");
  if (offset_vx < 0 || offset_vx > n - thickness_vx) throw OffsetOutOfRange("slab offset outside the grid");
  ModelSlice slice;
  slice.pixels = GrayImage(n, n, 0.0);
  for (int z = offset_vx; z < offset_vx + thickness_vx; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) slice.pixels.at(x, y) += model.at(x, y, z);
  slice.spec.offset_vx = offset_vx;
  slice.spec.thickness_vx = thickness_vx;
  for (double v : slice.pixels.pixels()) slice.max_value = std::max(slice.max_value, v);
  return slice;
}

ModelSlice blur(const ModelSlice& slice, double sigma_px) {
  if (!(sigma_px >= 0.0)) throw InvalidParams("blur sigma must be >= 0");
  ModelSlice out = slice;
  out.pixels = gaussian_blur(slice.pixels, sigma_px);
  out.spec.blur_sigma_px = sigma_px;
  out.max_value = 0.0;
  for (double v : out.pixels.pixels()) out.max_value = std::max(out.max_value, v);
  return out;
}

namespace {

Box centroid_crop_box(const GrayImage& img, int size, int jx, int jy) {
  double total = 0.0, sx = 0.0, sy = 0.0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double v = img.at(x, y);
      total += v;
      sx += v * x;
      sy += v * y;
    }
  }
  const double cx = total > 0 ? sx / total : 0.5 * (img.width() - 1);
  const double cy = total > 0 ? sy / total : 0.5 * (img.height() - 1);
  // Pixel (size / 2) of the crop lands on the rounded centroid.
  return Box{static_cast<int>(std::lround(cx)) - size / 2 + jx, static_cast<int>(std::lround(cy)) - size / 2 + jy,
             size, size};
}

ModelSlice finish(ModelSlice projected, const std::array<double, 3>& angles, double sigma, const Box& box) {
  ModelSlice s = blur(projected, sigma);
  s.pixels = crop(s.pixels, box);
  s.spec.angles = angles;
  s.spec.crop = box;
  s.normalize();
  return s;
}

}  // namespace

ModelSlice sample_random_slice(const VoxelModel& model, Rng& rng, const SlicerConfig& config) {
  const int n = model.side();
  const int t = config.thickness_vx;
  if (t < 1 || t > n) throw InvalidParams("slab thickness outside [1, grid side]");
  if (config.crop_size < 1 || config.jitter_px < 0) throw InvalidParams("invalid crop settings");

  std::vector<double> layer(n);
  std::vector<double> slab(n - t + 1);
  for (int attempt = 0; attempt < config.max_retries; ++attempt) {
    const std::array<double, 3> angles{rng.uniform(0.0, 2.0 * std::numbers::pi),
                                       rng.uniform(0.0, 2.0 * std::numbers::pi),
                                       rng.uniform(0.0, 2.0 * std::numbers::pi)};
    const VoxelModel rotated = rotate_model(model, angles);

    const auto& g = rotated.grid();
    const std::size_t plane = static_cast<std::size_t>(n) * n;
    int zlo = n, zhi = -1;
    for (int z = 0; z < n; ++z) {
      double acc = 0.0;
      for (std::size_t i = 0; i < plane; ++i) acc += g[z * plane + i];
      layer[z] = acc;
      if (acc > 0.0) {
        zlo = std::min(zlo, z);
        zhi = z;
      }
    }
    if (zhi < 0) continue;

    double heaviest = 0.0;
    for (int o = 0; o <= n - t; ++o) {
      double acc = 0.0;
      for (int z = o; z < o + t; ++z) acc += layer[z];
      slab[o] = acc;
      heaviest = std::max(heaviest, acc);
    }

    const int lo = std::max(0, zlo - t + 1);
    const int hi = std::min(n - t, zhi);
    const int offset = static_cast<int>(rng.uniform_int(lo, hi));
    const int jx = static_cast<int>(rng.uniform_int(-config.jitter_px, config.jitter_px));
    const int jy = static_cast<int>(rng.uniform_int(-config.jitter_px, config.jitter_px));
    if (slab[offset] < config.mass_min_fraction * heaviest) continue;

    ModelSlice projected = extract_and_project(rotated, offset, t);
    const Box box = centroid_crop_box(projected.pixels, config.crop_size, jx, jy);
    return finish(std::move(projected), angles, config.blur_sigma_px, box);
  }
  throw ExhaustedRetries("no slab above the mass threshold after " + std::to_string(config.max_retries) +
                         " attempts");
}

ModelSlice render_slice(const VoxelModel& model, const SliceSpec& spec) {
  ModelSlice projected = extract_and_project(rotate_model(model, spec.angles), spec.offset_vx, spec.thickness_vx);
  if (spec.crop.width == 0) {
    ModelSlice s = blur(projected, spec.blur_sigma_px);
    s.spec.angles = spec.angles;
    return s;
  }
  return finish(std::move(projected), spec.angles, spec.blur_sigma_px, spec.crop);
}

}  // namespace forge
