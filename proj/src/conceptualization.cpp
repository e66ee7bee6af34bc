// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#include "evonat/conceptualization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace evonat {

namespace {

struct CellTally {
  std::vector<int> per_class;
  int total = 0;
};

int majority_class(const CellTally& cell) {
  int best = 0;
  for (std::size_t k = 1; k < cell.per_class.size(); ++k)
    if (cell.per_class[k] > cell.per_class[best]) best = static_cast<int>(k);
  return best;
}

// Bin each latent point into the bounding-box grid; returns the tally per
// occupied cell plus the cell index of every sample.
std::pair<std::map<std::vector<int>, CellTally>, std::vector<std::vector<int>>>
grid_cells(std::span<const LatentSample> latents, int grid_resolution,
           int class_count) {
  if (latents.empty()) throw EmptyEvidence("intermix_region: no samples");
  if (grid_resolution < 2)
    throw ConfigError("intermix_region: grid_resolution must be >= 2");
  const Eigen::Index dim = latents.front().coords.size();
  Eigen::VectorXd lo = latents.front().coords, hi = latents.front().coords;
  for (const LatentSample& s : latents) {
    if (s.coords.size() != dim)
      throw ShapeError("intermix_region: ragged latent coordinates");
    if (s.label < 0 || s.label >= class_count)
      throw ShapeError("intermix_region: label outside class count");
    lo = lo.cwiseMin(s.coords);
    hi = hi.cwiseMax(s.coords);
  }

  std::map<std::vector<int>, CellTally> cells;
  std::vector<std::vector<int>> index_of(latents.size());
  for (std::size_t i = 0; i < latents.size(); ++i) {
    std::vector<int> idx(dim);
    for (Eigen::Index d = 0; d < dim; ++d) {
      const double width = hi(d) - lo(d);
      int bin = 0;
      if (width > 0.0) {
        bin = static_cast<int>((latents[i].coords(d) - lo(d)) / width *
                               grid_resolution);
        bin = std::clamp(bin, 0, grid_resolution - 1);
      }
      idx[static_cast<std::size_t>(d)] = bin;
    }
    CellTally& cell = cells[idx];
    if (cell.per_class.empty()) cell.per_class.assign(class_count, 0);
    cell.per_class[latents[i].label] += 1;
    cell.total += 1;
    index_of[i] = std::move(idx);
  }
  return {std::move(cells), std::move(index_of)};
}

int observed_class_count(std::span<const LatentSample> latents) {
  if (latents.empty()) throw EmptyEvidence("latent analysis: no samples");
  int max_label = 0;
  std::set<int> seen;
  for (const LatentSample& s : latents) {
    if (s.label < 0) throw ShapeError("latent labels must be non-negative");
    max_label = std::max(max_label, s.label);
    seen.insert(s.label);
  }
  if (seen.size() < 2)
    throw DegenerateInput("latent analysis requires at least two classes");
  return max_label + 1;
}

}  // namespace

std::vector<LatentSample> latent_map(const EncoderModel& encoder,
                                     std::span<const LabeledSample> samples) {
  if (samples.empty()) throw EmptyEvidence("latent_map: no samples");
  std::vector<LatentSample> out;
  out.reserve(samples.size());
  for (const LabeledSample& s : samples) {
    LatentSample l;
    l.coords = latent_coords(encoder, s.x);
    l.label = s.label;
    out.push_back(std::move(l));
  }
  return out;
}

IntermixRegion intermix_region(std::span<const LatentSample> latents,
                               int grid_resolution,
                               double beta_ratio_threshold) {
  if (!(beta_ratio_threshold > 0.0) || beta_ratio_threshold > 1.0)
    throw ConfigError("intermix_region: threshold must be in (0, 1]");
  const int classes = observed_class_count(latents);
  const auto [cells, index_of] =
      grid_cells(latents, grid_resolution, classes);

  IntermixRegion region;
  region.grid_resolution = grid_resolution;
  region.beta_ratio_threshold = beta_ratio_threshold;
  int mixed = 0;
  for (const auto& [idx, cell] : cells) {
    const int majority = cell.per_class[majority_class(cell)];
    const double minority_share =
        static_cast<double>(cell.total - majority) / cell.total;
    if (minority_share >= beta_ratio_threshold) {
      region.mixed_cells.insert(idx);
      ++mixed;
    }
  }
  region.mu_x = static_cast<double>(mixed) / static_cast<double>(cells.size());
  return region;
}

bool lemma_bound_check(double mu_x, double a_min, double beta) {
  if (!(mu_x >= 0.0 && mu_x <= 1.0))
    throw ConfigError("lemma_bound_check: mu_x must be in [0,1]");
  if (!(a_min >= 0.0 && a_min <= 1.0))
    throw ConfigError("lemma_bound_check: a_min must be in [0,1]");
  if (!(beta > 0.0)) throw ConfigError("lemma_bound_check: beta must be > 0");
  return mu_x <= beta * (1.0 - a_min);
}

double generative_error_floor(double mu_x, double c) {
  if (!(mu_x >= 0.0 && mu_x <= 1.0))
    throw ConfigError("generative_error_floor: mu_x must be in [0,1]");
  if (!(c > 0.0)) throw ConfigError("generative_error_floor: c must be > 0");
  return 0.5 * c * mu_x;
}

double separation_score(std::span<const LatentSample> latents, int class_count,
                        int grid_resolution) {
  const int observed = observed_class_count(latents);
  if (class_count < observed)
    throw ShapeError("separation_score: class_count below observed labels");
  const auto [cells, index_of] =
      grid_cells(latents, grid_resolution, class_count);
  int correct = 0;
  for (std::size_t i = 0; i < latents.size(); ++i) {
    const CellTally& cell = cells.at(index_of[i]);
    if (majority_class(cell) == latents[i].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(latents.size());
}

double response_correctness(double perception_accuracy,
                            double conceptualization_score) {
  if (!(perception_accuracy >= 0.0 && perception_accuracy <= 1.0))
    throw ConfigError("response_correctness: accuracy must be in [0,1]");
  if (!(conceptualization_score >= 0.0 && conceptualization_score <= 1.0))
    throw ConfigError("response_correctness: score must be in [0,1]");
  return conceptualization_score;
}

std::string write_latent_csv(std::span<const LatentSample> latents) {
  if (latents.empty()) throw EmptyEvidence("write_latent_csv: no samples");
  const Eigen::Index dim = latents.front().coords.size();
  std::ostringstream out;
  for (Eigen::Index d = 0; d < dim; ++d) out << 'c' << d << ',';
  out << "label\n";
  char buf[64];
  for (const LatentSample& s : latents) {
    if (s.coords.size() != dim)
      throw ShapeError("write_latent_csv: ragged latent coordinates");
    for (Eigen::Index d = 0; d < dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", s.coords(d));
      out << buf << ',';
    }
    out << s.label << '\n';
  }
  return out.str();
}

std::vector<LatentSample> read_latent_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ShapeError("read_latent_csv: missing header");
  const auto columns = 1 + std::count(line.begin(), line.end(), ',');
  const Eigen::Index dim = columns - 1;
  if (dim < 1) throw ShapeError("read_latent_csv: no coordinate columns");
  std::vector<LatentSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    LatentSample s;
    s.coords.resize(dim);
    for (Eigen::Index d = 0; d < dim; ++d) {
      if (!std::getline(row, field, ','))
        throw ShapeError("read_latent_csv: short row");
      s.coords(d) = std::stod(field);
    }
    if (!std::getline(row, field, ','))
      throw ShapeError("read_latent_csv: missing label");
    s.label = std::stoi(field);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace evonat
