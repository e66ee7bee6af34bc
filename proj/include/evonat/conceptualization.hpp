// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
//
// Analysis of latent-space class geometry: where two classes intermix, how
// much of the latent image that intermixed region covers (mu_X), the bound
// mu_X <= beta * (1 - A_min) that links intermixing to achievable accuracy,
// and the generative-error floor (c/2) * mu_X that intermixing forces on any
// decoder.
//
// Gridding convention. The bounding box of the latent coordinates is split
// into grid_resolution bins per axis; points on the top edge fall into the
// last bin, and a zero-width axis maps everything to bin 0. A cell is
// "mixed" when the share of its samples outside the cell's majority class
// reaches beta_ratio_threshold. mu_X is measured relative to occupied
// cells (the latent image), not the whole grid volume.
#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "evonat/errors.hpp"
#include "evonat/models.hpp"
#include "evonat/sample.hpp"

namespace evonat {

struct LatentSample {
  Eigen::VectorXd coords;
  int label = 0;
};

struct IntermixRegion {
  int grid_resolution = 32;
  std::set<std::vector<int>> mixed_cells;
  double mu_x = 0.0;
  double beta_ratio_threshold = 0.25;
};

// Latent image of a labeled sample set: one LatentSample per input, order
// and labels preserved.
std::vector<LatentSample> latent_map(const EncoderModel& encoder,
                                     std::span<const LabeledSample> samples);

// Grid the latent image and locate cells where classes strongly intermix.
// Requires at least two distinct classes and grid_resolution >= 2.
IntermixRegion intermix_region(std::span<const LatentSample> latents,
                               int grid_resolution,
                               double beta_ratio_threshold = 0.25);

// True iff mu_X <= beta * (1 - A_min).
bool lemma_bound_check(double mu_x, double a_min, double beta);

// Lower bound (c/2) * mu_X on the generative error rate: about half of the
// intermixed population is reproduced as the wrong class.
double generative_error_floor(double mu_x, double c);

// Cell-majority purity: the fraction of samples whose grid cell's majority
// class matches their own label (ties go to the lower label). class_count
// must exceed every label.
double separation_score(std::span<const LatentSample> latents, int class_count,
                        int grid_resolution = 32);

// Fraction of correct responses of a perceive-then-conceptualize system,
// assuming responses attach to identified concepts with perfect accuracy:
// the concept layer gates response quality, so the conceptualization score
// is the response correctness regardless of raw perceptual accuracy.
double response_correctness(double perception_accuracy,
                            double conceptualization_score);

// CSV export of a latent map: header "c0,...,label", one row per sample,
// coordinates at full precision. Read rebuilds the samples exactly.
std::string write_latent_csv(std::span<const LatentSample> latents);
std::vector<LatentSample> read_latent_csv(const std::string& text);

}  // namespace evonat
