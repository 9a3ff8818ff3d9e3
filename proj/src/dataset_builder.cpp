// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dataset_builder.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "forge/errors.hpp"
#include "forge/imaging.hpp"
#include "forge/png_io.hpp"
#include "forge/surrogate.hpp"

namespace forge {

namespace fs = std::filesystem;

std::vector<PatchPlan> plan_patches(const GenerationConfig& config) {
  std::vector<PatchPlan> plans;
  const std::pair<Split, long> splits[] = {
      {Split::train, config.n_train_patches}, {Split::val, config.n_val_patches}, {Split::test, config.n_test_patches}};
  const double f = config.positive_fraction;
  long index = 0;
  for (const auto& [split, n] : splits) {
    for (long j = 0; j < n; ++j, ++index) {
      PatchPlan p;
      p.index = index;
      char name[32];
      std::snprintf(name, sizeof name, "patch-%07ld", index);
      p.id = name;
      p.split = split;
      const bool positive = std::floor((j + 1) * f) > std::floor(j * f);
      p.label = positive ? Label::positive : Label::negative;
      p.seed = derive_seed(config.master_seed, static_cast<std::uint64_t>(index));
      plans.push_back(std::move(p));
    }
  }
  return plans;
}

PatchForge::PatchForge(GenerationConfig config) : config_(std::move(config)) {
  config_.validate();
  model_ = build_model(config_.model);
  load_backgrounds();
  assign_splits();
  for (auto& bg : backgrounds_) {
    try {
      const CellMask mask = segment_central_cell(bg.image, config_.segmenter);
      bg.candidates = normalize_weights(enumerate_boxes(bg.image, mask, config_.sampler),
                                        config_.sampler.weight_exponent);
    } catch (const NoCellFound& e) {
      throw NoCellFound("background " + bg.id + ": " + e.what());
    } catch (const NoCandidates& e) {
      throw NoCandidates("background " + bg.id + ": " + e.what());
    }
  }
}

void PatchForge::load_backgrounds() {
  if (config_.background_dir.empty()) {
    for (int i = 0; i < config_.surrogate_count; ++i) {
      SurrogateImage s = generate_surrogate(config_.surrogate, i);
      Background bg;
      bg.id = s.id;
      bg.identity = s.id;
      bg.kind = RecordKind::surrogate_image;
      bg.seed = s.seed;
      bg.image = std::move(s.image);
      backgrounds_.push_back(std::move(bg));
    }
    return;
  }

  const fs::path root(config_.background_dir);
  if (!fs::is_directory(root)) throw IoError("background_dir is not a directory: " + root.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const fs::path rel = fs::relative(file, root);
    Background bg;
    bg.kind = RecordKind::real_image;
    bg.identity = rel.has_parent_path() ? rel.begin()->string() : file.stem().string();
    std::string id = fs::path(rel).replace_extension().generic_string();
    std::replace(id.begin(), id.end(), '/', '-');
    bg.id = "img-" + id;
    bg.source = file;
    bg.image = read_png(file);
    backgrounds_.push_back(std::move(bg));
  }
  if (backgrounds_.empty()) throw IoError("no PNG images under " + root.string());
}

void PatchForge::assign_splits() {
  std::set<std::string> unique;
  for (const auto& bg : backgrounds_) unique.insert(bg.identity);
  std::vector<std::string> ids(unique.begin(), unique.end());
  if (ids.size() < 2) throw InvalidParams("need at least two background identities to form disjoint splits");

  // Fisher-Yates driven by the master seed.
  Rng rng(derive_seed(config_.master_seed, 0xb5c0f0e5ULL));
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    std::swap(ids[i], ids[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(i)))]);
  }
  const auto n = static_cast<long>(ids.size());
  const long n_test = std::clamp(std::lround(config_.test_identity_fraction * n), 1L, n - 1);
  long n_val = std::lround(config_.val_identity_fraction * n);
  if (config_.n_val_patches > 0) n_val = std::max(n_val, 1L);
  if (n_test + n_val >= n) throw InvalidParams("not enough identities for the requested splits");

  std::map<std::string, Split> split_of;
  for (long i = 0; i < n; ++i) {
    split_of[ids[i]] = i < n_test ? Split::test : (i < n_test + n_val ? Split::val : Split::train);
  }
  for (std::size_t i = 0; i < backgrounds_.size(); ++i) {
    backgrounds_[i].split = split_of.at(backgrounds_[i].identity);
    pools_[backgrounds_[i].split].push_back(i);
  }
}

SyntheticPatch PatchForge::make_patch(Split split, Label label, std::uint64_t seed) const {
  const auto pool = pools_.find(split);
  if (pool == pools_.end() || pool->second.empty()) {
    throw InvalidParams("no backgrounds assigned to split " + std::string(to_string(split)));
  }
  Rng rng(seed);
  const auto& ids = pool->second;
  const Background& bg = backgrounds_[ids[static_cast<std::size_t>(rng.uniform_int(0, long(ids.size()) - 1))]];

  SyntheticPatch patch;
  bool uniform = false;
  const PatchCandidate* cand = nullptr;
  if (label == Label::negative && rng.uniform01() < config_.composite.neg_uniform_frac) {
    cand = &sample_uniform(bg.candidates, rng);
    uniform = true;
  } else {
    cand = &sample_patch(bg.candidates, rng);
  }
  const GrayImage bg_patch = crop(bg.image, cand->box);
  if (label == Label::positive) {
    const ModelSlice slice = sample_random_slice(model_, rng, config_.slicer);
    patch = composite(bg_patch, slice, config_.composite, rng);
  } else {
    patch = make_negative(bg_patch, config_.sampler.box_size);
  }
  patch.provenance.source_id = bg.id;
  patch.provenance.box = cand->box;
  patch.provenance.box_sigma = cand->sigma;
  patch.provenance.seed = seed;
  patch.provenance.uniform_draw = uniform;
  return patch;
}

GrayImage PatchForge::regenerate(const ManifestRecord& record) const {
  if (record.kind != RecordKind::synthetic_patch) throw InvalidParams("only synthetic patches can be regenerated");
  return quantize16(make_patch(record.split, record.label, record.seed).pixels);
}

namespace {

nlohmann::json provenance_json(const SyntheticPatch& p) {
  nlohmann::json j = {{"background", p.provenance.source_id},
                      {"box", to_json(p.provenance.box)},
                      {"box_sigma", p.provenance.box_sigma}};
  if (p.provenance.slice) {
    j["slice"] = to_json(*p.provenance.slice);
    j["alpha"] = p.provenance.alpha;
    j["epsilon"] = p.provenance.epsilon;
  } else {
    j["uniform_draw"] = p.provenance.uniform_draw;
  }
  return j;
}

std::string relative_to(const fs::path& file, const fs::path& base) {
  return fs::relative(fs::absolute(file), fs::absolute(base)).generic_string();
}

}  // namespace

DatasetManifest generate_patch_dataset(const GenerationConfig& config, const fs::path& out_dir) {
  const PatchForge forge(config);
  const auto plans = plan_patches(forge.config());

  fs::create_directories(out_dir);
  {
    std::ofstream cfg(out_dir / "config.txt", std::ios::binary);
    if (!cfg) throw IoError("cannot write " + (out_dir / "config.txt").string());
    cfg << format_generation_config(forge.config());
  }

  DatasetManifest manifest;
  std::map<std::string, const Background*> by_id;
  for (const auto& bg : forge.backgrounds()) {
    by_id[bg.id] = &bg;
    ManifestRecord r;
    r.id = "bg-" + bg.id;
    r.label = Label::negative;
    r.kind = bg.kind;
    r.identity = bg.identity;
    r.split = bg.split;
    if (bg.kind == RecordKind::surrogate_image) {
      fs::create_directories(out_dir / "backgrounds");
      const fs::path file = out_dir / "backgrounds" / (bg.id + ".png");
      write_png16(file, bg.image);
      r.path = relative_to(file, out_dir);
      r.seed = bg.seed;
    } else {
      r.path = relative_to(bg.source, out_dir);
    }
    r.provenance = {{"width", bg.image.width()}, {"height", bg.image.height()},
                    {"candidates", bg.candidates.size()}};
    manifest.records.push_back(std::move(r));
  }

  for (const Split s : {Split::train, Split::val, Split::test}) {
    fs::create_directories(out_dir / "patches" / std::string(to_string(s)));
  }

  std::vector<ManifestRecord> patch_records(plans.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (std::size_t i = next++; i < plans.size(); i = next++) {
      try {
        const PatchPlan& plan = plans[i];
        const SyntheticPatch patch = forge.make_patch(plan.split, plan.label, plan.seed);
        const fs::path file = out_dir / "patches" / std::string(to_string(plan.split)) / (plan.id + ".png");
        write_png16(file, patch.pixels);
        const Background& bg = *by_id.at(patch.provenance.source_id);
        ManifestRecord& r = patch_records[i];
        r.id = plan.id;
        r.path = relative_to(file, out_dir);
        r.label = plan.label;
        r.kind = RecordKind::synthetic_patch;
        r.identity = bg.identity;
        r.split = plan.split;
        r.seed = plan.seed;
        r.provenance = provenance_json(patch);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = plans.size();
      }
    }
  };

  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, n_threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& r : patch_records) manifest.records.push_back(std::move(r));
  write_manifest(manifest, out_dir / "manifest.jsonl");
  return manifest;
}

ManifestStats summarize(const DatasetManifest& manifest) {
  ManifestStats stats;
  std::map<std::string, std::set<std::string>> ids;
  for (const auto& r : manifest.records) {
    const std::string split(to_string(r.split));
    ++stats.counts[split + "/" + std::string(to_string(r.kind)) + "/" + std::string(to_string(r.label))];
    ids[split].insert(r.identity);
  }
  for (const auto& [split, set] : ids) stats.identities[split] = static_cast<long>(set.size());
  return stats;
}

std::string format_stats(const ManifestStats& stats) {
  std::string out;
  for (const auto& [key, n] : stats.counts) out += key + " " + std::to_string(n) + "\n";
  for (const auto& [split, n] : stats.identities) out += split + "/identities " + std::to_string(n) + "\n";
  return out;
}

}  // namespace forge
