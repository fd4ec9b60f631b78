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

#include "qppp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qppp/text.hpp"

namespace qppp {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void check_axis(const GridAxis& axis) {
  if (axis.cells < 2) throw std::invalid_argument("grid: need at least 2 cells");
  if (!(axis.hi > axis.lo)) throw std::invalid_argument("grid: empty range");
}

// Row i holds L_i(a) for every cell a of `axis`.
std::vector<double> likelihood_table(std::span<const double> samples,
                                     const NoiseDensity& noise,
                                     const GridAxis& axis) {
  const auto cells = static_cast<std::size_t>(axis.cells);
  std::vector<double> table(samples.size() * cells, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (noise.scale == 0.0) {
      const int a = axis.cell_of(samples[i]);
      if (a >= 0) table[i * cells + static_cast<std::size_t>(a)] = 1.0;
      continue;
    }
    for (int a = 0; a < axis.cells; ++a) {
      table[i * cells + static_cast<std::size_t>(a)] =
          noise.cell_likelihood(samples[i], axis.edge(a), axis.edge(a + 1));
    }
  }
  return table;
}

double l1_change(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

// One pass of the 1-D update. Every output element is computed by the same
// expression in both execution modes, so they agree bit for bit.
void step_1d(const std::vector<double>& lik, std::size_t n, std::size_t cells,
             const std::vector<double>& h, std::vector<double>& den,
             std::vector<double>& next, Execution exec) {
  const auto nn = static_cast<long long>(n);
  const auto cc = static_cast<long long>(cells);
  auto den_of = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t a = 0; a < cells; ++a) s += lik[i * cells + a] * h[a];
    return s;
  };
  auto mass_of = [&](std::size_t a) {
    double s = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (den[i] <= 0.0) continue;
      ++used;
      s += (lik[i * cells + a] * h[a]) / den[i];
    }
    return used ? s / static_cast<double>(used) : 0.0;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) den[static_cast<std::size_t>(i)] = den_of(static_cast<std::size_t>(i));
#pragma omp parallel for schedule(static)
    for (long long a = 0; a < cc; ++a) next[static_cast<std::size_t>(a)] = mass_of(static_cast<std::size_t>(a));
  } else {
    for (std::size_t i = 0; i < n; ++i) den[i] = den_of(i);
    for (std::size_t a = 0; a < cells; ++a) next[a] = mass_of(a);
  }
}

void step_2d(const std::vector<double>& lik0, const std::vector<double>& lik1,
             std::size_t n, std::size_t c0, std::size_t c1,
             const std::vector<double>& h, std::vector<double>& den,
             std::vector<double>& next, Execution exec) {
  const auto nn = static_cast<long long>(n);
  const auto total = static_cast<long long>(c0 * c1);
  auto den_of = [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t a0 = 0; a0 < c0; ++a0) {
      const double l0 = lik0[i * c0 + a0];
      if (l0 == 0.0) continue;
      double row = 0.0;
      for (std::size_t a1 = 0; a1 < c1; ++a1) {
        row += lik1[i * c1 + a1] * h[a0 * c1 + a1];
      }
      s += l0 * row;
    }
    return s;
  };
  auto mass_of = [&](std::size_t cell) {
    const std::size_t a0 = cell / c1;
    const std::size_t a1 = cell % c1;
    double s = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (den[i] <= 0.0) continue;
      ++used;
      s += (lik0[i * c0 + a0] * lik1[i * c1 + a1] * h[cell]) / den[i];
    }
    return used ? s / static_cast<double>(used) : 0.0;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < nn; ++i) den[static_cast<std::size_t>(i)] = den_of(static_cast<std::size_t>(i));
#pragma omp parallel for schedule(static)
    for (long long a = 0; a < total; ++a) next[static_cast<std::size_t>(a)] = mass_of(static_cast<std::size_t>(a));
  } else {
    for (std::size_t i = 0; i < n; ++i) den[i] = den_of(i);
    for (std::size_t a = 0; a < c0 * c1; ++a) next[a] = mass_of(a);
  }
}

void check_options(const ReconstructionOptions& o) {
  if (o.max_iterations < 1) {
    throw std::invalid_argument("reconstruction: max_iterations must be >= 1");
  }
  if (o.tolerance < 0.0) {
    throw std::invalid_argument("reconstruction: tolerance must be >= 0");
  }
}

std::vector<double> column(const TrainingSet& set, bool c, int j) {
  std::vector<double> out;
  for (const auto& e : set.examples) {
    if (e.c == c) out.push_back(e.x[static_cast<std::size_t>(j)]);
  }
  return out;
}

}  // namespace

double NoiseDensity::sample(Stream& rng) const {
  if (scale == 0.0) return 0.0;
  if (shape == Shape::kUniform) return -scale + 2.0 * scale * uniform01(rng);
  return std::normal_distribution<double>(0.0, scale)(rng);
}

double NoiseDensity::cell_likelihood(double sample, double lo, double hi) const {
  const double w = hi - lo;
  if (scale == 0.0) return (sample >= lo && sample < hi) ? 1.0 : 0.0;
  if (shape == Shape::kUniform) {
    // a ranges over [lo, hi]; sample - a must lie in [-scale, scale].
    const double overlap =
        std::min(hi, sample + scale) - std::max(lo, sample - scale);
    return overlap > 0.0 ? overlap / (2.0 * scale * w) : 0.0;
  }
  return (normal_cdf((sample - lo) / scale) - normal_cdf((sample - hi) / scale)) /
         w;
}

TrainingSet distort(const TrainingSet& set, const NoiseDensity& noise,
                    Stream& rng) {
  if (noise.scale < 0.0) throw std::invalid_argument("distort: negative scale");
  TrainingSet out = set;
  for (auto& e : out.examples) {
    for (auto& v : e.x) v += round_to_grid(noise.sample(rng));
  }
  return out;
}

int GridAxis::cell_of(double v) const noexcept {
  if (!(v >= lo && v <= hi)) return -1;
  const int a = static_cast<int>(std::floor((v - lo) / width()));
  return std::clamp(a, 0, cells - 1);
}

GridAxis axis_for(std::span<const double> samples, double pad, int cells) {
  if (samples.empty()) throw std::invalid_argument("axis_for: no samples");
  const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  GridAxis axis{*mn - pad, *mx + pad, cells};
  if (!(axis.hi > axis.lo)) {
    axis.lo -= 0.5;
    axis.hi += 0.5;
  }
  check_axis(axis);
  return axis;
}

double DensityGrid::total() const noexcept {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

std::string DensityGrid::to_csv() const {
  std::string out = "cell,mass\n";
  for (std::size_t i = 0; i < mass.size(); ++i) {
    out += std::to_string(i) + "," + format_number(mass[i]) + "\n";
  }
  return out;
}

DensityGrid reconstruct_1d(std::span<const double> samples,
                           const NoiseDensity& noise, const GridAxis& axis,
                           const ReconstructionOptions& options) {
  if (samples.empty()) throw std::invalid_argument("reconstruct_1d: no samples");
  check_axis(axis);
  check_options(options);
  const auto cells = static_cast<std::size_t>(axis.cells);
  const auto lik = likelihood_table(samples, noise, axis);
  DensityGrid g{{axis}, std::vector<double>(cells, 1.0 / static_cast<double>(cells)), 0};
  std::vector<double> den(samples.size());
  std::vector<double> next(cells);
  for (int it = 1; it <= options.max_iterations; ++it) {
    step_1d(lik, samples.size(), cells, g.mass, den, next, options.execution);
    const double change = l1_change(next, g.mass);
    g.mass.swap(next);
    g.iterations = it;
    if (change < options.tolerance) break;
  }
  return g;
}

DensityGrid reconstruct_2d(std::span<const double> x0,
                           std::span<const double> x1,
                           const NoiseDensity& noise, const GridAxis& axis0,
                           const GridAxis& axis1,
                           const ReconstructionOptions& options) {
  if (x0.empty()) throw std::invalid_argument("reconstruct_2d: no samples");
  if (x0.size() != x1.size()) {
    throw std::invalid_argument("reconstruct_2d: coordinate count mismatch");
  }
  check_axis(axis0);
  check_axis(axis1);
  check_options(options);
  const auto c0 = static_cast<std::size_t>(axis0.cells);
  const auto c1 = static_cast<std::size_t>(axis1.cells);
  const auto lik0 = likelihood_table(x0, noise, axis0);
  const auto lik1 = likelihood_table(x1, noise, axis1);
  DensityGrid g{{axis0, axis1},
                std::vector<double>(c0 * c1, 1.0 / static_cast<double>(c0 * c1)),
                0};
  std::vector<double> den(x0.size());
  std::vector<double> next(c0 * c1);
  for (int it = 1; it <= options.max_iterations; ++it) {
    step_2d(lik0, lik1, x0.size(), c0, c1, g.mass, den, next, options.execution);
    const double change = l1_change(next, g.mass);
    g.mass.swap(next);
    g.iterations = it;
    if (change < options.tolerance) break;
  }
  return g;
}

DensityGrid empirical_histogram(std::span<const double> samples,
                                const GridAxis& axis) {
  if (samples.empty()) throw std::invalid_argument("histogram: no samples");
  check_axis(axis);
  DensityGrid g{{axis}, std::vector<double>(static_cast<std::size_t>(axis.cells), 0.0), 0};
  std::vector<long long> counts(g.mass.size(), 0);
  for (double v : samples) {
    const int a = axis.cell_of(v);
    if (a >= 0) ++counts[static_cast<std::size_t>(a)];
  }
  for (std::size_t a = 0; a < counts.size(); ++a) {
    g.mass[a] = static_cast<double>(counts[a]) / static_cast<double>(samples.size());
  }
  return g;
}

DensityGrid empirical_histogram_2d(std::span<const double> x0,
                                   std::span<const double> x1,
                                   const GridAxis& axis0,
                                   const GridAxis& axis1) {
  if (x0.empty() || x0.size() != x1.size()) {
    throw std::invalid_argument("histogram: bad sample arrays");
  }
  check_axis(axis0);
  check_axis(axis1);
  const auto c1 = static_cast<std::size_t>(axis1.cells);
  DensityGrid g{{axis0, axis1},
                std::vector<double>(static_cast<std::size_t>(axis0.cells) * c1, 0.0),
                0};
  std::vector<long long> counts(g.mass.size(), 0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const int a0 = axis0.cell_of(x0[i]);
    const int a1 = axis1.cell_of(x1[i]);
    if (a0 >= 0 && a1 >= 0) {
      ++counts[static_cast<std::size_t>(a0) * c1 + static_cast<std::size_t>(a1)];
    }
  }
  for (std::size_t a = 0; a < counts.size(); ++a) {
    g.mass[a] = static_cast<double>(counts[a]) / static_cast<double>(x0.size());
  }
  return g;
}

DensityGrid product_grid(const DensityGrid& a, const DensityGrid& b) {
  if (a.dims() != 1 || b.dims() != 1) {
    throw std::invalid_argument("product_grid: inputs must be 1-D");
  }
  DensityGrid g{{a.axes[0], b.axes[0]}, {}, 0};
  g.mass.reserve(a.mass.size() * b.mass.size());
  for (double ma : a.mass) {
    for (double mb : b.mass) g.mass.push_back(ma * mb);
  }
  return g;
}

double l1_distance(const DensityGrid& a, const DensityGrid& b) {
  if (a.mass.size() != b.mass.size() || a.dims() != b.dims()) {
    throw std::invalid_argument("l1_distance: grid shapes differ");
  }
  return l1_change(a.mass, b.mass);
}

std::vector<double> sample_point(const DensityGrid& grid, Stream& rng) {
  const double total = grid.total();
  if (!(total > 0.0)) throw std::invalid_argument("sample_point: empty grid");
  double r = uniform01(rng) * total;
  std::size_t cell = grid.mass.size() - 1;
  for (std::size_t i = 0; i < grid.mass.size(); ++i) {
    if (r < grid.mass[i]) {
      cell = i;
      break;
    }
    r -= grid.mass[i];
  }
  while (grid.mass[cell] <= 0.0 && cell > 0) --cell;
  std::vector<double> point(grid.axes.size());
  std::size_t rest = cell;
  for (std::size_t d = grid.axes.size(); d-- > 0;) {
    const auto& ax = grid.axes[d];
    const auto a = static_cast<int>(rest % static_cast<std::size_t>(ax.cells));
    rest /= static_cast<std::size_t>(ax.cells);
    point[d] = round_to_grid(ax.edge(a) + ax.width() * uniform01(rng));
  }
  return point;
}

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kUniformNoRecon:
      return "uniform";
    case BaselineKind::kNormalNoRecon:
      return "normal";
    case BaselineKind::kUniform1DRecon:
      return "uniform-recon1d";
    case BaselineKind::kUniform2DRecon:
      return "uniform-recon2d";
  }
  return "?";
}

BaselineKind parse_baseline_kind(std::string_view text) {
  for (auto kind : kAllBaselines) {
    if (text == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown baseline '" + std::string(text) +
                              "' (uniform, normal, uniform-recon1d, "
                              "uniform-recon2d)");
}

NoiseDensity BaselineMethod::noise() const {
  if (kind == BaselineKind::kNormalNoRecon) {
    return NoiseDensity::normal(kNormalSigmaPerDelta * delta);
  }
  return NoiseDensity::uniform(delta);
}

ReconstructionError compare_reconstructions(const TrainingSet& set,
                                            double delta, int cells,
                                            const ReconstructionOptions& options,
                                            Stream& rng) {
  if (set.k != 2) {
    throw std::invalid_argument("compare_reconstructions: needs k = 2");
  }
  const NoiseDensity noise = NoiseDensity::uniform(delta);
  const TrainingSet published = distort(set, noise, rng);
  ReconstructionError err;
  for (bool c : {false, true}) {
    const auto y0 = column(published, c, 0);
    const auto y1 = column(published, c, 1);
    if (y0.empty()) continue;
    const auto x0 = column(set, c, 0);
    const auto x1 = column(set, c, 1);
    const GridAxis a0 = axis_for(y0, 3.0 * delta, cells);
    const GridAxis a1 = axis_for(y1, 3.0 * delta, cells);
    const DensityGrid truth = empirical_histogram_2d(x0, x1, a0, a1);
    const DensityGrid joint = reconstruct_2d(y0, y1, noise, a0, a1, options);
    const DensityGrid marg = product_grid(reconstruct_1d(y0, noise, a0, options),
                                          reconstruct_1d(y1, noise, a1, options));
    err.l1_2d += l1_distance(joint, truth);
    err.l1_1d += l1_distance(marg, truth);
  }
  return err;
}

TrainRecord train_baseline(const TrainingSet& set, const BaselineMethod& method,
                           int max_rounds, std::uint64_t seed) {
  if (set.examples.empty()) {
    throw std::invalid_argument("train_baseline: empty training set");
  }
  if (method.delta < 0.0) {
    throw std::invalid_argument("train_baseline: delta must be >= 0");
  }
  Stream distortion = derive_stream(seed, {kDistortionRole});
  Stream resample = derive_stream(seed, {kResampleRole});
  const NoiseDensity noise = method.noise();
  const TrainingSet published = distort(set, noise, distortion);

  TrainingSet learn_on = published;
  const bool joint = method.kind == BaselineKind::kUniform2DRecon;
  if (method.kind == BaselineKind::kUniform1DRecon || joint) {
    if (joint && set.k != 2) {
      throw std::invalid_argument("train_baseline: 2-D reconstruction needs k = 2");
    }
    learn_on.examples.clear();
    const double pad = 3.0 * method.delta;
    for (bool c : {false, true}) {
      const int count = published.count_class(c);
      if (count == 0) continue;
      if (joint) {
        const auto y0 = column(published, c, 0);
        const auto y1 = column(published, c, 1);
        const DensityGrid g = reconstruct_2d(
            y0, y1, noise, axis_for(y0, pad, method.grid_cells),
            axis_for(y1, pad, method.grid_cells), method.reconstruction);
        for (int i = 0; i < count; ++i) {
          learn_on.examples.push_back({sample_point(g, resample), c});
        }
      } else {
        std::vector<DensityGrid> marginals;
        for (int j = 0; j < set.k; ++j) {
          const auto y = column(published, c, j);
          marginals.push_back(reconstruct_1d(y, noise,
                                             axis_for(y, pad, method.grid_cells),
                                             method.reconstruction));
        }
        for (int i = 0; i < count; ++i) {
          Example e{{}, c};
          for (const auto& m : marginals) e.x.push_back(sample_point(m, resample)[0]);
          learn_on.examples.push_back(std::move(e));
        }
      }
    }
  }
  TrainResult r = train_classical(learn_on, max_rounds);
  r.record.success = r.record.terminated && classifies_all(r.classifier, set);
  return r.record;
}

}  // namespace qppp
