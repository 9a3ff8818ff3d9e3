// Copyright 2026 The Centriole Forge Authors
// SPDX-License-Identifier: Apache-2.0

// Slow reference implementations used only by tests. Nothing here calls the
// code path it is meant to check.

#pragma once

#include <array>
#include <vector>

#include "forge/centriole_model.hpp"
#include "forge/image.hpp"

namespace oracle {

/// Point-in-shell voxelization with s^3 samples per voxel on the same grid
/// layout as forge::build_model.
forge::VoxelModel voxelize_pair(const forge::ModelParams& p, int samples);

/// Rotation by inverse-mapping every output voxel through the composed
/// inverse Rx(-a) Ry(-b) Rz(-c), with its own trilinear sampler.
forge::VoxelModel rotate(const forge::VoxelModel& m, const std::array<double, 3>& angles);

/// Triple-loop slab sum.
forge::GrayImage project(const forge::VoxelModel& m, int offset, int thickness);

/// Direct 2D convolution with a truncated Gaussian, renormalized over
/// in-image taps.
forge::GrayImage blur2d(const forge::GrayImage& img, double sigma);

/// Full sort, linear interpolation at h = (n - 1) q.
double quantile_sorted(std::vector<double> v, double q);

double mean_naive(const forge::GrayImage& img);

/// Mean pixel value per integer radius bin round(r) around (cx, cy).
std::vector<double> radial_profile(const forge::GrayImage& img, double cx, double cy, int bins);

/// Sum over rows for each column.
std::vector<double> column_profile(const forge::GrayImage& img);

/// Indices of the two largest strict local maxima, ascending.
std::array<int, 2> two_peaks(const std::vector<double>& profile);

double iou(const forge::BinaryImage& a, const forge::BinaryImage& b);

/// Components by repeated flood fill over a visited set; returns the count.
int count_components(const forge::BinaryImage& mask, int connectivity);

/// Upper-tail p-value of Pearson's chi-square statistic.
double chi_square_p(const std::vector<long>& observed, const std::vector<double>& probabilities);

}  // namespace oracle
