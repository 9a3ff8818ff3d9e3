// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

// forge: synthetic centriole patch generator.
//
//   forge generate --config <file> --out <dir> [--seed N]
//   forge segment <image> --mask-out <path>
//   forge slices --n 8 --out <dir> [--seed N]
//   forge surrogate --n 50 --out <dir> [--seed N]
//   forge stats <manifest>
//   forge model --out <dir>
//   forge candidates <image> --out <png>
//
// Exit codes: 0 success, 1 error, 2 no cell found.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "forge/cell_segmenter.hpp"
#include "forge/centriole_model.hpp"
#include "forge/config.hpp"
#include "forge/dataset_builder.hpp"
#include "forge/errors.hpp"
#include "forge/manifest.hpp"
#include "forge/patch_sampler.hpp"
#include "forge/png_io.hpp"
#include "forge/slicer.hpp"
#include "forge/surrogate.hpp"

namespace fs = std::filesystem;

namespace {

int run_generate(const fs::path& config_path, const fs::path& out, std::optional<std::uint64_t> seed) {
  auto config = config_path.empty() ? forge::GenerationConfig{} : forge::load_generation_config(config_path);
  if (seed) config.master_seed = *seed;
  const auto manifest = forge::generate_patch_dataset(config, out);
  std::cout << forge::format_stats(forge::summarize(manifest));
  return 0;
}

int run_segment(const fs::path& image_path, const fs::path& mask_out) {
  const auto image = forge::read_png(image_path);
  const auto mask = forge::segment_central_cell(image, forge::SegmenterConfig{});
  forge::GrayImage out(mask.bits.width(), mask.bits.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mask.bits[i] ? 255.0 : 0.0;
  forge::write_png8(mask_out, out);
  std::cout << "area_px " << mask.area_px << " centroid " << mask.cx << " " << mask.cy << "\n";
  return 0;
}

int run_slices(int n, const fs::path& out, std::uint64_t seed) {
  fs::create_directories(out);
  const auto model = forge::build_model(forge::ModelParams{});
  const forge::SlicerConfig config;
  std::ofstream specs(out / "slices.jsonl", std::ios::binary);
  for (int i = 0; i < n; ++i) {
    forge::Rng rng(forge::derive_seed(seed, static_cast<std::uint64_t>(i)));
    auto slice = forge::sample_random_slice(model, rng, config);
    for (double& v : slice.pixels.pixels()) v *= 255.0;
    char name[32];
    std::snprintf(name, sizeof name, "slice-%04d.png", i);
    forge::write_png8(out / name, slice.pixels);
    specs << forge::to_json(slice.spec).dump() << "\n";
  }
  return 0;
}

int run_surrogate(int n, const fs::path& out, std::uint64_t seed, double noise) {
  fs::create_directories(out);
  forge::SurrogateConfig config;
  config.seed = seed;
  config.noise = noise;
  for (int i = 0; i < n; ++i) {
    const auto s = forge::generate_surrogate(config, i);
    forge::write_png16(out / (s.id + ".png"), s.image);
    forge::GrayImage mask(s.cell_mask.width(), s.cell_mask.height());
    for (std::size_t k = 0; k < mask.size(); ++k) mask[k] = s.cell_mask[k] ? 255.0 : 0.0;
    forge::write_png8(out / (s.id + "_mask.png"), mask);
  }
  return 0;
}

int run_stats(const fs::path& manifest) {
  std::cout << forge::format_stats(forge::summarize(forge::read_manifest(manifest)));
  return 0;
}

int run_candidates(const fs::path& image_path, const fs::path& out) {
  const auto image = forge::read_png(image_path);
  const auto mask = forge::segment_central_cell(image, forge::SegmenterConfig{});
  const forge::SamplerConfig config;
  const auto candidates = forge::normalize_weights(forge::enumerate_boxes(image, mask, config), config.weight_exponent);
  double lo = image[0], hi = image[0];
  for (double v : image.pixels()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  forge::GrayImage overlay(image.width(), image.height());
  for (std::size_t i = 0; i < image.size(); ++i) overlay[i] = hi > lo ? 200.0 * (image[i] - lo) / (hi - lo) : 0.0;
  for (const auto& c : candidates) {
    const auto& b = c.box;
    for (int x = b.x0; x < b.x0 + b.width; ++x) {
      overlay.at(x, b.y0) = 255.0;
      overlay.at(x, b.y0 + b.height - 1) = 255.0;
    }
    for (int y = b.y0; y < b.y0 + b.height; ++y) {
      overlay.at(b.x0, y) = 255.0;
      overlay.at(b.x0 + b.width - 1, y) = 255.0;
    }
  }
  forge::write_png8(out, overlay);
  for (const auto& c : candidates) {
    std::cout << c.box.x0 << " " << c.box.y0 << " sigma " << c.sigma << " weight " << c.weight << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic centriole patch generator"};
  app.require_subcommand(1);

  fs::path gen_config, gen_out;
  std::optional<std::uint64_t> gen_seed;
  auto* generate = app.add_subcommand("generate", "Generate a labeled patch dataset");
  generate->add_option("--config", gen_config, "Flat key = value config file");
  generate->add_option("--out", gen_out, "Output directory")->required();
  generate->add_option("--seed", gen_seed, "Override master_seed");

  fs::path seg_image, seg_mask;
  auto* segment = app.add_subcommand("segment", "Segment the central cell of an image");
  segment->add_option("image", seg_image)->required()->check(CLI::ExistingFile);
  segment->add_option("--mask-out", seg_mask, "8-bit PNG mask output")->required();

  int slice_n = 8;
  fs::path slice_out;
  std::uint64_t slice_seed = 0;
  auto* slices = app.add_subcommand("slices", "Render random model slices");
  slices->add_option("--n", slice_n)->check(CLI::NonNegativeNumber);
  slices->add_option("--out", slice_out)->required();
  slices->add_option("--seed", slice_seed);

  int sur_n = 50;
  fs::path sur_out;
  std::uint64_t sur_seed = 1;
  double sur_noise = forge::SurrogateConfig{}.noise;
  auto* surrogate = app.add_subcommand("surrogate", "Generate surrogate background images with masks");
  surrogate->add_option("--n", sur_n)->check(CLI::NonNegativeNumber);
  surrogate->add_option("--out", sur_out)->required();
  surrogate->add_option("--seed", sur_seed);
  surrogate->add_option("--noise", sur_noise, "Noise std as a fraction of the background intensity");

  fs::path stats_manifest;
  auto* stats = app.add_subcommand("stats", "Summarize a manifest");
  stats->add_option("manifest", stats_manifest)->required()->check(CLI::ExistingFile);

  fs::path model_out;
  auto* model = app.add_subcommand("model", "Export the voxel model as PNG planes");
  model->add_option("--out", model_out)->required();

  fs::path cand_image, cand_out;
  auto* candidates = app.add_subcommand("candidates", "Overlay candidate boxes on an image");
  candidates->add_option("image", cand_image)->required()->check(CLI::ExistingFile);
  candidates->add_option("--out", cand_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen_config, gen_out, gen_seed);
    if (*segment) return run_segment(seg_image, seg_mask);
    if (*slices) return run_slices(slice_n, slice_out, slice_seed);
    if (*surrogate) return run_surrogate(sur_n, sur_out, sur_seed, sur_noise);
    if (*stats) return run_stats(stats_manifest);
    if (*model) {
      forge::export_model_slices(forge::build_model(forge::ModelParams{}), model_out);
      return 0;
    }
    if (*candidates) return run_candidates(cand_image, cand_out);
  } catch (const forge::NoCellFound& e) {
    std::cerr << "forge: no cell found: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
