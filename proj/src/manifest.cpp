// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/manifest.hpp"

#include <fstream>
#include <map>
#include <set>

#include "forge/errors.hpp"

namespace forge {

std::string_view to_string(Label label) { return label == Label::positive ? "positive" : "negative"; }

std::string_view to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::synthetic_patch: return "synthetic-patch";
    case RecordKind::real_image: return "real-image";
    case RecordKind::surrogate_image: return "surrogate-image";
  }
  return "?";
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "?";
}

Label parse_label(std::string_view s) {
  if (s == "positive") return Label::positive;
  if (s == "negative") return Label::negative;
  throw ParseError("unknown label '" + std::string(s) + "'");
}

RecordKind parse_kind(std::string_view s) {
  if (s == "synthetic-patch") return RecordKind::synthetic_patch;
  if (s == "real-image") return RecordKind::real_image;
  if (s == "surrogate-image") return RecordKind::surrogate_image;
  throw ParseError("unknown kind '" + std::string(s) + "'");
}

Split parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "val") return Split::val;
  if (s == "test") return Split::test;
  throw ParseError("unknown split '" + std::string(s) + "'");
}

void validate_manifest(const DatasetManifest& manifest) {
  std::set<std::string> ids;
  std::map<std::string, Split> home;
  for (const auto& r : manifest.records) {
    if (!ids.insert(r.id).second) throw ParseError("duplicate record id '" + r.id + "'");
    const auto [it, fresh] = home.emplace(r.identity, r.split);
    if (!fresh && it->second != r.split) {
      throw ParseError("identity '" + r.identity + "' appears in splits " + std::string(to_string(it->second)) +
                       " and " + std::string(to_string(r.split)));
    }
  }
}

nlohmann::json to_json(const Box& box) { return {box.x0, box.y0, box.width, box.height}; }

Box box_from_json(const nlohmann::json& j) {
  return Box{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>(), j.at(3).get<int>()};
}

nlohmann::json to_json(const SliceSpec& spec) {
  return {{"angles", spec.angles},
          {"offset_vx", spec.offset_vx},
          {"thickness_vx", spec.thickness_vx},
          {"blur_sigma_px", spec.blur_sigma_px},
          {"crop", to_json(spec.crop)}};
}

SliceSpec slice_spec_from_json(const nlohmann::json& j) {
  SliceSpec s;
  s.angles = j.at("angles").get<std::array<double, 3>>();
  s.offset_vx = j.at("offset_vx").get<int>();
  s.thickness_vx = j.at("thickness_vx").get<int>();
  s.blur_sigma_px = j.at("blur_sigma_px").get<double>();
  s.crop = box_from_json(j.at("crop"));
  return s;
}

std::string record_to_line(const ManifestRecord& r) {
  const nlohmann::json j = {{"id", r.id},
                            {"path", r.path},
                            {"label", to_string(r.label)},
                            {"kind", to_string(r.kind)},
                            {"identity", r.identity},
                            {"split", to_string(r.split)},
                            {"seed", r.seed},
                            {"generator_version", r.generator_version},
                            {"provenance", r.provenance}};
  return j.dump();
}

ManifestRecord record_from_line(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    ManifestRecord r;
    r.id = j.at("id").get<std::string>();
    r.path = j.at("path").get<std::string>();
    r.label = parse_label(j.at("label").get<std::string>());
    r.kind = parse_kind(j.at("kind").get<std::string>());
    r.identity = j.at("identity").get<std::string>();
    r.split = parse_split(j.at("split").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.generator_version = j.at("generator_version").get<std::string>();
    r.provenance = j.at("provenance");
    if (!r.provenance.is_object()) throw ParseError("provenance must be an object");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  validate_manifest(manifest);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : manifest.records) out << record_to_line(r) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  DatasetManifest m;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      m.records.push_back(record_from_line(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  validate_manifest(m);
  return m;
}

}  // namespace forge
