// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"
#include "forge/random.hpp"

namespace forge {

void SurrogateConfig::validate() const {
  if (width < 60 || height < 60) throw InvalidParams("surrogate image smaller than 60x60");
  if (!(cell_radius_min > 0 && cell_radius_min <= cell_radius_max)) throw InvalidParams("empty cell radius range");
  if (cell_radius_max + centre_jitter_px >= 0.5 * std::min(width, height)) {
    throw InvalidParams("central cell does not fit in the image");
  }
  if (!(nucleus_fraction_min > 0 && nucleus_fraction_min <= nucleus_fraction_max && nucleus_fraction_max < 1)) {
    throw InvalidParams("empty nucleus fraction range");
  }
  if (distractors_min < 0 || distractors_min > distractors_max) throw InvalidParams("empty distractor range");
  if (partial_cells_max < 0 || noise < 0 || centre_jitter_px < 0) throw InvalidParams("negative surrogate setting");
}

namespace {

// Ellipse with a low-order boundary wobble; r(phi) scales both semi-axes.
struct Blob {
  double cx, cy, a, b, theta;
  double wobble_amp = 0.0;
  double wobble_phase = 0.0;
  int wobble_freq = 3;

  bool contains(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    const double c = std::cos(theta), s = std::sin(theta);
    const double u = (c * dx + s * dy) / a;
    const double v = (-s * dx + c * dy) / b;
    const double scale = 1.0 + wobble_amp * std::sin(wobble_freq * std::atan2(v, u) + wobble_phase);
    return u * u + v * v <= scale * scale;
  }
  double reach() const { return std::max(a, b) * (1.0 + wobble_amp); }
};

template <typename F>
void paint(int w, int h, const Blob& blob, F&& f) {
  const double r = blob.reach() + 1.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(blob.cx - r)));
  const int x1 = std::min(w - 1, static_cast<int>(std::ceil(blob.cx + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(blob.cy - r)));
  const int y1 = std::min(h - 1, static_cast<int>(std::ceil(blob.cy + r)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (blob.contains(x, y)) f(x, y);
}

}  // namespace

SurrogateImage generate_surrogate(const SurrogateConfig& cfg, int index) {
  cfg.validate();
  SurrogateImage out;
  out.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
  char name[32];
  std::snprintf(name, sizeof name, "surrogate-%04d", index);
  out.id = name;
  Rng rng(out.seed);

  const int w = cfg.width, h = cfg.height;
  const double two_pi = 2.0 * std::numbers::pi;
  GrayImage clean(w, h, cfg.background_intensity);
  out.cell_mask = BinaryImage(w, h, 0);
  out.distractor_mask = BinaryImage(w, h, 0);

  Blob cell{0.5 * (w - 1) + rng.uniform(-cfg.centre_jitter_px, cfg.centre_jitter_px),
            0.5 * (h - 1) + rng.uniform(-cfg.centre_jitter_px, cfg.centre_jitter_px),
            rng.uniform(cfg.cell_radius_min, cfg.cell_radius_max),
            rng.uniform(cfg.cell_radius_min, cfg.cell_radius_max),
            rng.uniform(0.0, std::numbers::pi)};
  cell.wobble_amp = rng.uniform(0.0, 0.04);
  cell.wobble_phase = rng.uniform(0.0, two_pi);
  // Keep the wobbled outline inside the image.
  const double limit = 0.5 * std::min(w, h) - cfg.centre_jitter_px - 2.0;
  const double shrink = std::min(1.0, limit / cell.reach());
  cell.a *= shrink;
  cell.b *= shrink;

  // Partial neighbours sit beyond the border, clear of the central cell.
  const int partials = static_cast<int>(rng.uniform_int(0, cfg.partial_cells_max));
  for (int i = 0; i < partials; ++i) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      const double phi = rng.uniform(0.0, two_pi);
      const double r = rng.uniform(0.7, 1.0) * cfg.cell_radius_max;
      const double dist = 0.5 * std::hypot(w, h) + rng.uniform(-0.6, -0.1) * r;
      Blob other{0.5 * (w - 1) + dist * std::cos(phi), 0.5 * (h - 1) + dist * std::sin(phi), r,
                 r * rng.uniform(0.8, 1.0), rng.uniform(0.0, std::numbers::pi)};
      if (std::hypot(other.cx - cell.cx, other.cy - cell.cy) < other.reach() + cell.reach() + 20.0) continue;
      paint(w, h, other, [&](int x, int y) { clean.at(x, y) = cfg.cell_intensity; });
      break;
    }
  }

  paint(w, h, cell, [&](int x, int y) {
    clean.at(x, y) = cfg.cell_intensity;
    out.cell_mask.at(x, y) = 1;
  });

  const double nf = rng.uniform(cfg.nucleus_fraction_min, cfg.nucleus_fraction_max);
  Blob nucleus{cell.cx + rng.uniform(-0.2, 0.2) * cell.a, cell.cy + rng.uniform(-0.2, 0.2) * cell.b, nf * cell.a,
               nf * cell.b * rng.uniform(0.8, 1.0), rng.uniform(0.0, std::numbers::pi)};
  nucleus.wobble_amp = rng.uniform(0.0, 0.08);
  nucleus.wobble_phase = rng.uniform(0.0, two_pi);
  paint(w, h, nucleus, [&](int x, int y) {
    if (out.cell_mask.at(x, y)) clean.at(x, y) = cfg.nucleus_intensity;
  });

  const int distractors = static_cast<int>(rng.uniform_int(cfg.distractors_min, cfg.distractors_max));
  for (int i = 0; i < distractors; ++i) {
    // Rejection-sample a centre inside the cytoplasm.
    double px = cell.cx, py = cell.cy;
    for (int attempt = 0; attempt < 50; ++attempt) {
      px = cell.cx + rng.uniform(-cell.a, cell.a);
      py = cell.cy + rng.uniform(-cell.a, cell.a);
      if (cell.contains(px, py) && !nucleus.contains(px, py)) break;
    }
    const bool ring = rng.uniform01() < 0.5;
    const double r = ring ? rng.uniform(6.0, 15.0) : rng.uniform(8.0, 20.0);
    Blob outer{px, py, r, ring ? r : r * rng.uniform(0.4, 0.9), rng.uniform(0.0, std::numbers::pi)};
    Blob inner = outer;
    const double wall = rng.uniform(2.0, 3.5);
    inner.a = std::max(0.5, outer.a - wall);
    inner.b = std::max(0.5, outer.b - wall);
    paint(w, h, outer, [&](int x, int y) {
      if (!out.cell_mask.at(x, y)) return;
      if (ring && inner.contains(x, y)) return;
      clean.at(x, y) = cfg.distractor_intensity;
      out.distractor_mask.at(x, y) = 1;
    });
  }

  // Soften hard edges, then add noise and quantize to the 16-bit grid.
  out.image = gaussian_blur(clean, 1.0);
  const double noise_std = cfg.noise * cfg.background_intensity;
  for (double& v : out.image.pixels()) {
    v = std::clamp(std::round(v + noise_std * rng.normal()), 0.0, 65535.0);
  }
  return out;
}

std::vector<SurrogateImage> generate_surrogate_backgrounds(const SurrogateConfig& config, int count) {
  std::vector<SurrogateImage> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(generate_surrogate(config, i));
  return out;
}

}  // namespace forge
