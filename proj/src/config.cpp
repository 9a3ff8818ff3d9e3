// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

void GenerationConfig::validate() const {
  if (n_train_patches <= 0 || n_test_patches <= 0 || n_val_patches < 0) {
    throw InvalidParams("patch counts must be > 0");
  }
  if (!(positive_fraction > 0.0 && positive_fraction < 1.0)) throw InvalidParams("positive_fraction outside (0, 1)");
  if (!(test_identity_fraction > 0.0 && test_identity_fraction < 1.0)) {
    throw InvalidParams("test_identity_fraction outside (0, 1)");
  }
  if (val_identity_fraction < 0.0 || val_identity_fraction + test_identity_fraction >= 1.0) {
    throw InvalidParams("val_identity_fraction leaves no training identities");
  }
  if (background_dir.empty() && surrogate_count < 2) throw InvalidParams("surrogate_count must be >= 2");
  if (threads < 0) throw InvalidParams("threads must be >= 0");
  model.validate();
  segmenter.validate();
  sampler.validate();
  composite.validate();
  if (background_dir.empty()) surrogate.validate();
  if (slicer.crop_size != sampler.box_size) throw InvalidParams("slicer.crop_size must equal sampler.box_size");
}

namespace {

struct Field {
  std::string key;
  std::function<void(std::string_view)> set;
  std::function<std::string()> get;
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParseError("bad boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

template <typename T>
Field num(std::string key, T& ref) {
  return Field{key, [&ref, key](std::string_view v) { ref = parse_number<T>(key, v); },
               [&ref]() {
                 if constexpr (std::is_floating_point_v<T>) {
                   return fmt_double(ref);
                 } else {
                   return std::to_string(ref);
                 }
               }};
}

std::vector<Field> fields(GenerationConfig& c) {
  return {
      num("n_train_patches", c.n_train_patches),
      num("n_val_patches", c.n_val_patches),
      num("n_test_patches", c.n_test_patches),
      num("positive_fraction", c.positive_fraction),
      num("master_seed", c.master_seed),
      Field{"background_dir", [&c](std::string_view v) { c.background_dir = std::string(v); },
            [&c]() { return c.background_dir; }},
      num("surrogate_count", c.surrogate_count),
      num("test_identity_fraction", c.test_identity_fraction),
      num("val_identity_fraction", c.val_identity_fraction),
      num("threads", c.threads),

      num("model.diameter_nm", c.model.diameter_nm),
      num("model.length_nm", c.model.length_nm),
      num("model.wall_thickness_nm", c.model.wall_thickness_nm),
      num("model.resolution_nm_per_voxel", c.model.resolution_nm_per_voxel),
      num("model.pair_gap_nm", c.model.pair_gap_nm),
      num("model.antialias_samples", c.model.antialias_samples),

      num("slicer.thickness_vx", c.slicer.thickness_vx),
      num("slicer.blur_sigma_px", c.slicer.blur_sigma_px),
      num("slicer.mass_min_fraction", c.slicer.mass_min_fraction),
      num("slicer.crop_size", c.slicer.crop_size),
      num("slicer.jitter_px", c.slicer.jitter_px),
      num("slicer.max_retries", c.slicer.max_retries),

      num("segmenter.smooth_sigma_px", c.segmenter.smooth_sigma_px),
      num("segmenter.threshold_factor", c.segmenter.threshold_factor),
      num("segmenter.erosion_radius_px", c.segmenter.erosion_radius_px),
      num("segmenter.dilation_radius_px", c.segmenter.dilation_radius_px),
      num("segmenter.min_area_px", c.segmenter.min_area_px),
      num("segmenter.connectivity", c.segmenter.connectivity),
      Field{"segmenter.dark_foreground",
            [&c](std::string_view v) { c.segmenter.dark_foreground = parse_bool("segmenter.dark_foreground", v); },
            [&c]() { return std::string(c.segmenter.dark_foreground ? "true" : "false"); }},

      num("sampler.box_size", c.sampler.box_size),
      num("sampler.grid_stride_px", c.sampler.grid_stride_px),
      num("sampler.cover_min", c.sampler.cover_min),
      num("sampler.sigma_floor_fraction", c.sampler.sigma_floor_fraction),
      num("sampler.weight_exponent", c.sampler.weight_exponent),

      num("composite.alpha", c.composite.alpha),
      num("composite.epsilon_lo", c.composite.epsilon_lo),
      num("composite.epsilon_hi", c.composite.epsilon_hi),
      num("composite.quantile", c.composite.quantile),
      num("composite.neg_uniform_frac", c.composite.neg_uniform_frac),

      num("surrogate.width", c.surrogate.width),
      num("surrogate.height", c.surrogate.height),
      num("surrogate.cell_radius_min", c.surrogate.cell_radius_min),
      num("surrogate.cell_radius_max", c.surrogate.cell_radius_max),
      num("surrogate.centre_jitter_px", c.surrogate.centre_jitter_px),
      num("surrogate.nucleus_fraction_min", c.surrogate.nucleus_fraction_min),
      num("surrogate.nucleus_fraction_max", c.surrogate.nucleus_fraction_max),
      num("surrogate.distractors_min", c.surrogate.distractors_min),
      num("surrogate.distractors_max", c.surrogate.distractors_max),
      num("surrogate.partial_cells_max", c.surrogate.partial_cells_max),
      num("surrogate.noise", c.surrogate.noise),
      num("surrogate.background_intensity", c.surrogate.background_intensity),
      num("surrogate.cell_intensity", c.surrogate.cell_intensity),
      num("surrogate.nucleus_intensity", c.surrogate.nucleus_intensity),
      num("surrogate.distractor_intensity", c.surrogate.distractor_intensity),
      num("surrogate.seed", c.surrogate.seed),
  };
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

GenerationConfig parse_generation_config(std::string_view text) {
  GenerationConfig config;
  auto table = fields(config);
  int lineno = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    bool found = false;
    for (auto& f : table) {
      if (f.key == key) {
        f.set(value);
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + std::string(key) + "'");
  }
  return config;
}

GenerationConfig load_generation_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generation_config(ss.str());
}

std::string format_generation_config(const GenerationConfig& config) {
  GenerationConfig copy = config;
  std::string out;
  for (const auto& f : fields(copy)) out += f.key + " = " + f.get() + "\n";
  return out;
}

}  // namespace forge
