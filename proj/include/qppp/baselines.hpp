// Copyright 2026 The qppp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Classical randomization baselines: publish x + noise with a public noise
// law, optionally estimate the original distribution by iterative Bayes on a
// grid, and train an ordinary perceptron on the result.
//
// Reconstruction update, with cell-averaged noise likelihood L_i(a):
//
//   h'(a) = (1/N) sum_i L_i(a) h(a) / sum_a' L_i(a') h(a')
//
// started from the uniform grid and stopped when sum |h' - h| < tolerance.
// The 2-D grid uses the product likelihood L_i(a0) L_i(a1), so an iteration
// costs O(N L^2).

#ifndef QPPP_BASELINES_HPP_
#define QPPP_BASELINES_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qppp/data.hpp"
#include "qppp/execution.hpp"
#include "qppp/perceptron.hpp"

namespace qppp {

/// Standard deviation of the normal baseline, in units of delta.
inline constexpr double kNormalSigmaPerDelta = 0.484;

/// Public noise law of a baseline.
struct NoiseDensity {
  enum class Shape { kUniform, kNormal };
  Shape shape = Shape::kUniform;
  double scale = 0.0;  // half-width for uniform, sigma for normal; 0 = none

  static NoiseDensity uniform(double delta) { return {Shape::kUniform, delta}; }
  static NoiseDensity normal(double sigma) { return {Shape::kNormal, sigma}; }

  double sample(Stream& rng) const;
  /// (1/w) * integral over [lo, hi] of the noise density at sample - a.
  /// With zero scale: 1 if sample is in [lo, hi), else 0.
  double cell_likelihood(double sample, double lo, double hi) const;
};

/// Adds independent rounded noise to each attribute; labels are kept.
TrainingSet distort(const TrainingSet& set, const NoiseDensity& noise,
                    Stream& rng);

struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  int cells = 20;

  double width() const noexcept { return (hi - lo) / cells; }
  double edge(int a) const noexcept { return lo + width() * a; }
  /// Cell holding v (the top edge belongs to the last cell); -1 if outside.
  int cell_of(double v) const noexcept;
};

/// [min - pad, max + pad] of the samples, split into `cells` intervals.
GridAxis axis_for(std::span<const double> samples, double pad, int cells);

struct DensityGrid {
  std::vector<GridAxis> axes;  // 1 or 2
  std::vector<double> mass;    // row-major, axis 0 slowest
  int iterations = 0;

  int dims() const noexcept { return static_cast<int>(axes.size()); }
  double total() const noexcept;
  /// CSV "cell,mass" with a header row.
  std::string to_csv() const;
};

struct ReconstructionOptions {
  int max_iterations = 500;
  double tolerance = 1e-4;
  Execution execution = Execution::kParallel;
};

DensityGrid reconstruct_1d(std::span<const double> samples,
                           const NoiseDensity& noise, const GridAxis& axis,
                           const ReconstructionOptions& options = {});

/// `x0`, `x1`: the two coordinates of each distorted sample.
DensityGrid reconstruct_2d(std::span<const double> x0,
                           std::span<const double> x1,
                           const NoiseDensity& noise, const GridAxis& axis0,
                           const GridAxis& axis1,
                           const ReconstructionOptions& options = {});

/// Fraction of samples per cell; samples off the grid are dropped.
DensityGrid empirical_histogram(std::span<const double> samples,
                                const GridAxis& axis);
DensityGrid empirical_histogram_2d(std::span<const double> x0,
                                   std::span<const double> x1,
                                   const GridAxis& axis0,
                                   const GridAxis& axis1);

/// Outer product of two 1-D grids.
DensityGrid product_grid(const DensityGrid& a, const DensityGrid& b);

/// Sum of absolute cell differences; grids must share a shape.
double l1_distance(const DensityGrid& a, const DensityGrid& b);

/// Draws a point: a cell by mass, then uniformly inside it, rounded to the
/// 1/1024 grid.
std::vector<double> sample_point(const DensityGrid& grid, Stream& rng);

enum class BaselineKind {
  kUniformNoRecon,
  kNormalNoRecon,
  kUniform1DRecon,
  kUniform2DRecon,
};

inline constexpr std::array<BaselineKind, 4> kAllBaselines = {
    BaselineKind::kUniformNoRecon, BaselineKind::kNormalNoRecon,
    BaselineKind::kUniform1DRecon, BaselineKind::kUniform2DRecon};

std::string_view to_string(BaselineKind kind);
BaselineKind parse_baseline_kind(std::string_view text);

struct BaselineMethod {
  BaselineKind kind = BaselineKind::kUniformNoRecon;
  double delta = 1.0;
  int grid_cells = 20;
  ReconstructionOptions reconstruction;

  NoiseDensity noise() const;
};

/// Per-class reconstruction error of one distorted draw, measured against
/// the histogram of the original points on the same grid (summed over
/// classes).
struct ReconstructionError {
  double l1_1d = 0.0;
  double l1_2d = 0.0;
};

ReconstructionError compare_reconstructions(const TrainingSet& set,
                                            double delta, int cells,
                                            const ReconstructionOptions& options,
                                            Stream& rng);

/// One training run: distort, optionally reconstruct and resample, train the
/// plain perceptron, and judge success on the original set.
TrainRecord train_baseline(const TrainingSet& set, const BaselineMethod& method,
                           int max_rounds, std::uint64_t seed);

}  // namespace qppp

#endif  // QPPP_BASELINES_HPP_
