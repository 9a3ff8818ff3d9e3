// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/patch_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"

namespace forge {

void SamplerConfig::validate() const {
  if (box_size < 1) throw InvalidParams("box_size must be >= 1");
  if (grid_stride_px < 1) throw InvalidParams("grid_stride_px must be >= 1");
  if (!(cover_min > 0.0 && cover_min <= 1.0)) throw InvalidParams("cover_min outside (0, 1]");
  if (!(sigma_floor_fraction > 0.0)) throw InvalidParams("sigma_floor_fraction must be > 0");
  if (!(weight_exponent > 0.0)) throw InvalidParams("weight_exponent must be > 0");
}

std::vector<PatchCandidate> enumerate_boxes(const GrayImage& image, const CellMask& mask, const SamplerConfig& config) {
  config.validate();
  if (mask.bits.width() != image.width() || mask.bits.height() != image.height()) {
    throw ShapeMismatch("mask and image differ in shape");
  }
  const auto [lo, hi] = std::minmax_element(image.pixels().begin(), image.pixels().end());
  const double floor = config.sigma_floor_fraction * std::max(*hi - *lo, 0.0);

  const int b = config.box_size;
  const long need = static_cast<long>(std::ceil(config.cover_min * b * b - 1e-9));
  std::vector<PatchCandidate> out;
  std::vector<double> values(static_cast<std::size_t>(b) * b);
  for (int y0 = 0; y0 + b <= image.height(); y0 += config.grid_stride_px) {
    for (int x0 = 0; x0 + b <= image.width(); x0 += config.grid_stride_px) {
      long inside = 0;
      std::size_t k = 0;
      for (int y = y0; y < y0 + b; ++y) {
        for (int x = x0; x < x0 + b; ++x) {
          inside += mask.bits.at(x, y) != 0;
          values[k++] = image.at(x, y);
        }
      }
      if (inside < need) continue;
      PatchCandidate c;
      c.box = Box{x0, y0, b, b};
      c.coverage = static_cast<double>(inside) / (static_cast<double>(b) * b);
      c.sigma = std::max(stddev(values), floor);
      out.push_back(c);
    }
  }
  if (out.empty()) throw NoCandidates("no box reaches the mask coverage threshold");
  return out;
}

std::vector<PatchCandidate> normalize_weights(std::vector<PatchCandidate> candidates, double exponent) {
  if (candidates.empty()) throw EmptyCandidateSet("cannot weight an empty candidate set");
  double smallest = candidates.front().sigma;
  for (const auto& c : candidates) {
    if (!(c.sigma > 0.0)) throw InvalidParams("candidate sigma must be > 0");
    smallest = std::min(smallest, c.sigma);
  }
  // (smallest / sigma)^k is proportional to sigma^-k and stays in (0, 1].
  double total = 0.0;
  for (auto& c : candidates) {
    c.weight = std::pow(smallest / c.sigma, exponent);
    total += c.weight;
  }
  for (auto& c : candidates) c.weight /= total;
  return candidates;
}

const PatchCandidate& sample_patch(const std::vector<PatchCandidate>& candidates, Rng& rng) {
  if (candidates.empty()) throw EmptyCandidateSet("cannot sample from an empty candidate set");
  double total = 0.0;
  for (const auto& c : candidates) total += c.weight;
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  for (const auto& c : candidates) {
    acc += c.weight;
    if (u < acc) return c;
  }
  return candidates.back();
}

const PatchCandidate& sample_uniform(const std::vector<PatchCandidate>& candidates, Rng& rng) {
  if (candidates.empty()) throw EmptyCandidateSet("cannot sample from an empty candidate set");
  return candidates[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(candidates.size()) - 1))];
}

}  // namespace forge
