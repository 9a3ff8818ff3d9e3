// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "forge/compositor.hpp"

namespace forge {

enum class RecordKind { synthetic_patch, real_image, surrogate_image };
enum class Split { train, val, test };

std::string_view to_string(Label label);
std::string_view to_string(RecordKind kind);
std::string_view to_string(Split split);
Label parse_label(std::string_view s);
RecordKind parse_kind(std::string_view s);
Split parse_split(std::string_view s);

inline constexpr std::string_view kGeneratorVersion = "forge-1.0";

struct ManifestRecord {
  std::string id;
  std::string path;      // relative to the manifest's directory
  Label label = Label::negative;
  RecordKind kind = RecordKind::synthetic_patch;
  std::string identity;  // patient id or surrogate id
  Split split = Split::train;
  std::uint64_t seed = 0;
  std::string generator_version{kGeneratorVersion};
  nlohmann::json provenance = nlohmann::json::object();

  bool operator==(const ManifestRecord&) const = default;
};

struct DatasetManifest {
  std::vector<ManifestRecord> records;
  bool operator==(const DatasetManifest&) const = default;
};

/// Throws ParseError on duplicate ids or an identity that appears in more
/// than one split.
void validate_manifest(const DatasetManifest& manifest);

/// One JSON object per line, UTF-8, keys sorted.
std::string record_to_line(const ManifestRecord& record);
ManifestRecord record_from_line(std::string_view line);

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path);

nlohmann::json to_json(const SliceSpec& spec);
SliceSpec slice_spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Box& box);
Box box_from_json(const nlohmann::json& j);

}  // namespace forge
