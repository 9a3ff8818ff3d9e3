// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "forge/errors.hpp"
#include "forge/imaging.hpp"
#include "forge/slicer.hpp"
#include "oracles/oracles.hpp"

using namespace forge;

namespace {

const VoxelModel& default_model() {
  static const VoxelModel m = build_model(ModelParams{});
  return m;
}

double total(const VoxelModel& m) {
  double s = 0.0;
  for (double v : m.grid()) s += v;
  return s;
}

// Feret diameter of the pixels at or above `level`, in pixels.
double max_diameter(const GrayImage& img, double level) {
  double best = 0.0;
  for (int deg = 0; deg < 180; deg += 3) {
    const double c = std::cos(deg * std::numbers::pi / 180), s = std::sin(deg * std::numbers::pi / 180);
    double lo = 1e9, hi = -1e9;
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) {
        if (img.at(x, y) < level) continue;
        const double t = c * x + s * y;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    if (hi >= lo) best = std::max(best, hi - lo + 1);
  }
  return best;
}

}  // namespace

TEST_CASE("rotation matrix is orthonormal") {
  const auto r = rotation_matrix({0.3, -1.1, 2.0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[3 * i + k] * r[3 * j + k];
      CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("identity rotation returns the input") {
  CHECK(rotate_model(default_model(), {0, 0, 0}) == default_model());
}

TEST_CASE("quarter turn about z preserves mass within 2%") {
  const double before = total(default_model());
  const double after = total(rotate_model(default_model(), {0, 0, std::numbers::pi / 2}));
  CHECK(std::abs(after / before - 1) < 0.02);
}

TEST_CASE("random rotations preserve mass within 5%") {
  Rng rng(21);
  const double before = total(default_model());
  for (int i = 0; i < 20; ++i) {
    const std::array<double, 3> a{rng.uniform(0, 6.283), rng.uniform(0, 6.283), rng.uniform(0, 6.283)};
    CHECK(std::abs(total(rotate_model(default_model(), a)) / before - 1) < 0.05);
  }
}

TEST_CASE("fast rotate and project agree with the brute-force oracle") {
  Rng rng(99);
  const auto& m = default_model();
  for (int trial = 0; trial < 10; ++trial) {
    const std::array<double, 3> a{rng.uniform(0, 6.283), rng.uniform(0, 6.283), rng.uniform(0, 6.283)};
    const int offset = static_cast<int>(rng.uniform_int(0, m.side() - 10));
    const auto fast = extract_and_project(rotate_model(m, a), offset, 10);
    const auto slow = oracle::project(oracle::rotate(m, a), offset, 10);
    double worst = 0.0;
    for (std::size_t i = 0; i < slow.size(); ++i) worst = std::max(worst, std::abs(fast.pixels[i] - slow[i]));
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("projection conserves slab mass and is linear") {
  const auto& m = default_model();
  const auto proj = extract_and_project(m, 20, 10);
  double slab = 0.0;
  for (int z = 20; z < 30; ++z)
    for (int y = 0; y < m.side(); ++y)
      for (int x = 0; x < m.side(); ++x) slab += m.at(x, y, z);
  CHECK(proj.total_mass() == doctest::Approx(slab).epsilon(1e-12));

  // Split the model into two disjoint halves (x below / above the centre).
  VoxelModel left = m, right = m;
  const int c = (m.side() - 1) / 2;
  for (int z = 0; z < m.side(); ++z)
    for (int y = 0; y < m.side(); ++y)
      for (int x = 0; x < m.side(); ++x) (x < c ? right : left).at(x, y, z) = 0.0;
  const auto pl = extract_and_project(left, 20, 10);
  const auto pr = extract_and_project(right, 20, 10);
  for (std::size_t i = 0; i < proj.pixels.size(); ++i) CHECK(pl.pixels[i] + pr.pixels[i] == proj.pixels[i]);
}

TEST_CASE("slab outside the occupancy projects to zero; bad offsets throw") {
  const auto& m = default_model();
  const auto empty = extract_and_project(m, 0, 10);
  CHECK(empty.total_mass() == 0.0);
  CHECK_THROWS_AS(extract_and_project(m, -1, 10), OffsetOutOfRange);
  CHECK_THROWS_AS(extract_and_project(m, m.side() - 9, 10), OffsetOutOfRange);
}

TEST_CASE("end-on view of cylinder A is a ring peaking at 6-7 px") {
  const ModelParams p;
  const auto& m = default_model();
  const double c = (m.side() - 1) / 2.0;
  const double ay = c - (p.diameter_nm / 2 + p.pair_gap_nm / 2) / p.resolution_nm_per_voxel;
  const int offset = static_cast<int>(std::lround(c - 4.5));
  for (const auto& img : {blur(extract_and_project(m, offset, 10), 1.0).pixels,
                          oracle::blur2d(oracle::project(m, offset, 10), 1.0)}) {
    const auto prof = oracle::radial_profile(img, c, ay, 12);
    const auto peak = std::max_element(prof.begin(), prof.end()) - prof.begin();
    CHECK(peak >= 6);
    CHECK(peak <= 7);
    CHECK(prof[0] / prof[peak] < 0.3);
  }
}

TEST_CASE("side-on view of cylinder A shows two bands 10-13 px apart") {
  const ModelParams p;
  const auto rotated = oracle::rotate(default_model(), {std::numbers::pi / 2, 0, 0});
  const double c = (rotated.side() - 1) / 2.0;
  const double az = c - (p.diameter_nm / 2 + p.pair_gap_nm / 2) / p.resolution_nm_per_voxel;
  const int offset = static_cast<int>(std::lround(az - 4.5));
  const auto img = blur(extract_and_project(rotated, offset, 10), 1.0).pixels;
  const auto peaks = oracle::two_peaks(oracle::column_profile(img));
  CHECK(peaks[1] - peaks[0] >= 10);
  CHECK(peaks[1] - peaks[0] <= 13);
}

TEST_CASE("blur: identity at sigma 0, delta response, mass conservation") {
  ModelSlice s;
  s.pixels = GrayImage(31, 31, 0.0);
  s.pixels.at(15, 15) = 1.0;
  CHECK(blur(s, 0.0).pixels == s.pixels);

  const auto b = blur(s, 1.0);
  const auto k = gaussian_kernel(1.0);
  CHECK(b.pixels.at(15, 15) == doctest::Approx(k[3] * k[3]).epsilon(1e-12));
  CHECK(std::abs(b.total_mass() - 1.0) < 1e-6);

  const auto proj = extract_and_project(default_model(), 20, 10);
  CHECK(std::abs(blur(proj, 1.5).total_mass() / proj.total_mass() - 1) < 1e-4);
  CHECK_THROWS_AS(blur(s, -0.1), InvalidParams);
}

TEST_CASE("random slices are deterministic, 60x60 and normalized") {
  const SlicerConfig cfg;
  Rng a(1234), b(1234);
  for (int i = 0; i < 5; ++i) {
    const auto sa = sample_random_slice(default_model(), a, cfg);
    const auto sb = sample_random_slice(default_model(), b, cfg);
    CHECK(sa.pixels == sb.pixels);
    CHECK(sa.spec == sb.spec);
    CHECK(sa.width() == 60);
    CHECK(sa.height() == 60);
    CHECK(*std::max_element(sa.pixels.pixels().begin(), sa.pixels.pixels().end()) == 1.0);
    CHECK(sa.max_value == 1.0);
    CHECK(render_slice(default_model(), sa.spec).pixels == sa.pixels);
  }
}

TEST_CASE("no drawn slab falls below the mass threshold; diameters span ring to lengthwise") {
  const SlicerConfig cfg;
  const auto& m = default_model();
  Rng rng(77);
  std::vector<double> diameters;
  for (int i = 0; i < 1000; ++i) {
    const auto s = sample_random_slice(m, rng, cfg);
    diameters.push_back(max_diameter(s.pixels, 0.25));
    if (i % 10 == 0) {
      // Re-derive the slab masses for this orientation independently.
      const auto rotated = oracle::rotate(m, s.spec.angles);
      double heaviest = 0.0;
      for (int o = 0; o + cfg.thickness_vx <= m.side(); ++o) {
        double acc = 0.0;
        for (double v : oracle::project(rotated, o, cfg.thickness_vx).pixels()) acc += v;
        heaviest = std::max(heaviest, acc);
      }
      double drawn = 0.0;
      for (double v : oracle::project(rotated, s.spec.offset_vx, cfg.thickness_vx).pixels()) drawn += v;
      CHECK(drawn >= cfg.mass_min_fraction * heaviest - 1e-6);
    }
  }
  std::sort(diameters.begin(), diameters.end());
  MESSAGE("diameter p01 " << diameters[10] << " p50 " << diameters[500] << " p99 " << diameters[990]);
  CHECK(diameters[10] <= 14);
  CHECK(diameters[990] >= 24);
}

TEST_CASE("impossible mass threshold exhausts retries") {
  SlicerConfig cfg;
  cfg.mass_min_fraction = 1.5;
  Rng rng(1);
  CHECK_THROWS_AS(sample_random_slice(default_model(), rng, cfg), ExhaustedRetries);
}
