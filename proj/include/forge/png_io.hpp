// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

#include "forge/image.hpp"

namespace forge {

/// Values are rounded and clamped to [0, 255].
void write_png8(const std::filesystem::path& path, const GrayImage& image);

/// Values are rounded and clamped to [0, 65535].
void write_png16(const std::filesystem::path& path, const GrayImage& image);

/// Reads 8- or 16-bit grayscale (colour is converted to gray). Values keep
/// the file's native scale.
GrayImage read_png(const std::filesystem::path& path);

/// Same rounding as write_png16, without touching the filesystem.
GrayImage quantize16(const GrayImage& image);

}  // namespace forge
