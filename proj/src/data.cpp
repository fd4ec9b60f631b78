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

#include "qppp/data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qppp/text.hpp"

namespace qppp {

namespace {

constexpr int kMaxRedraws = 1000000;

double gaussian(Stream& rng, double mean, double sigma) {
  return std::normal_distribution<double>(mean, sigma)(rng);
}

double uniform(Stream& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

bool fits(const FixedPointCodec& codec, double a, double b) {
  return codec.in_range(a) && codec.in_range(b);
}

[[noreturn]] void give_up(const char* which) {
  throw std::runtime_error(std::string(which) +
                           ": parameters leave no admissible points");
}

void require_positive(int n, const char* which) {
  if (n < 1) {
    throw std::invalid_argument(std::string(which) + ": N must be >= 1");
  }
}

}  // namespace

int TrainingSet::count_class(bool c) const {
  int count = 0;
  for (const auto& e : examples) count += e.c == c ? 1 : 0;
  return count;
}

void TrainingSet::validate() const {
  if (k < 1) throw std::invalid_argument("TrainingSet: k must be >= 1");
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (static_cast<int>(examples[i].x.size()) != k) {
      throw std::invalid_argument("TrainingSet: example " + std::to_string(i) +
                                  " has the wrong arity");
    }
    for (double v : examples[i].x) {
      if (!codec.in_range(v)) {
        throw std::out_of_range("TrainingSet: example " + std::to_string(i) +
                                " value " + format_number(v) +
                                " outside the codec range");
      }
    }
  }
}

TrainingSet generate_set1(int n, Stream& rng, const Set1Params& p,
                          const FixedPointCodec& codec) {
  require_positive(n, "generate_set1");
  if (n % 2 != 0) throw std::invalid_argument("generate_set1: N must be even");
  TrainingSet set{{}, 2, codec};
  set.examples.reserve(static_cast<std::size_t>(n));
  // Alternate classes so every prefix is balanced.
  for (int i = 0; i < n; ++i) {
    const bool c = (i % 2) == 1;
    const double m1 = c ? p.mean1_x1 : p.mean0_x1;
    const double m2 = c ? p.mean1_x2 : p.mean0_x2;
    for (int tries = 0;; ++tries) {
      if (tries == kMaxRedraws) give_up("generate_set1");
      const double a = round_to_grid(gaussian(rng, m1, p.sigma));
      const double b = round_to_grid(gaussian(rng, m2, p.sigma));
      const double diff = a - b;
      const bool separated = c ? diff >= p.margin : diff <= -p.margin;
      if (separated && fits(codec, a, b)) {
        set.examples.push_back({{a, b}, c});
        break;
      }
    }
  }
  return set;
}

TrainingSet generate_set2(int n, Stream& rng, const Set2Params& p,
                          const FixedPointCodec& codec) {
  require_positive(n, "generate_set2");
  TrainingSet set{{}, 2, codec};
  set.examples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int tries = 0;; ++tries) {
      if (tries == kMaxRedraws) give_up("generate_set2");
      const double a = round_to_grid(gaussian(rng, p.mean, p.sigma));
      const double b = round_to_grid(gaussian(rng, p.mean, p.sigma));
      const double s = p.w1 * a + p.w2 * b + p.b;
      if (std::abs(s) >= p.margin && fits(codec, a, b)) {
        set.examples.push_back({{a, b}, s > 0.0});
        break;
      }
    }
  }
  return set;
}

TrainingSet generate_set3(int n, Stream& rng, const Set3Params& p,
                          const FixedPointCodec& codec) {
  require_positive(n, "generate_set3");
  TrainingSet set{{}, 2, codec};
  set.examples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int tries = 0;; ++tries) {
      if (tries == kMaxRedraws) give_up("generate_set3");
      const double r1 = round_to_grid(uniform(rng, 0.0, p.width));
      const double r2 = round_to_grid(uniform(rng, 0.0, p.span));
      const bool c = fair_coin(rng);
      const double b = r2;
      const double a = r2 + r1 + (c ? p.shift : 0.0);
      if (fits(codec, a, b)) {
        set.examples.push_back({{a, b}, c});
        break;
      }
    }
  }
  return set;
}

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

TrainingSet pad_to_power_of_two(TrainingSet set, Stream& rng) {
  if (set.examples.empty()) {
    throw std::invalid_argument("pad_to_power_of_two: empty set");
  }
  const std::size_t original = set.examples.size();
  std::size_t target = 1;
  while (target < original) target <<= 1;
  while (set.examples.size() < target) {
    const auto pick = static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<int>(original) - 1));
    set.examples.push_back(set.examples[pick]);
  }
  return set;
}

std::string format_dataset(const TrainingSet& set) {
  std::string out;
  for (int j = 1; j <= set.k; ++j) out += "x" + std::to_string(j) + ",";
  out += "class\n";
  for (const auto& e : set.examples) {
    for (double v : e.x) out += format_exact(v) + ",";
    out += e.c ? "1\n" : "0\n";
  }
  return out;
}

void save_dataset(const TrainingSet& set, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << format_dataset(set);
  if (!f) throw std::runtime_error("write failed for " + path);
}

TrainingSet parse_dataset(std::string_view csv, const FixedPointCodec& codec) {
  std::vector<std::string_view> lines;
  for (auto line : split(csv, '\n')) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw std::invalid_argument("dataset: empty input");
  const auto header = split(lines[0], ',');
  const int k = static_cast<int>(header.size()) - 1;
  if (k < 1 || header.back() != "class") {
    throw std::invalid_argument("dataset: header must be x1,...,xk,class");
  }
  for (int j = 0; j < k; ++j) {
    if (header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1)) {
      throw std::invalid_argument("dataset: header column " +
                                  std::to_string(j + 1) + " must be x" +
                                  std::to_string(j + 1));
    }
  }
  TrainingSet set{{}, k, codec};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (static_cast<int>(cells.size()) != k + 1) {
      throw std::invalid_argument("dataset: row " + std::to_string(i) +
                                  " has " + std::to_string(cells.size()) +
                                  " fields, expected " + std::to_string(k + 1));
    }
    Example e;
    for (int j = 0; j < k; ++j) {
      e.x.push_back(parse_real(trim(cells[static_cast<std::size_t>(j)])));
    }
    const auto c = trim(cells.back());
    if (c != "0" && c != "1") {
      throw std::invalid_argument("dataset: class must be 0 or 1 on row " +
                                  std::to_string(i));
    }
    e.c = c == "1";
    set.examples.push_back(std::move(e));
  }
  if (set.examples.empty()) throw std::invalid_argument("dataset: no rows");
  set.validate();
  return set;
}

TrainingSet load_dataset(const std::string& path, const FixedPointCodec& codec) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_dataset(buf.str(), codec);
}

std::string DatasetSpec::to_string() const {
  if (source == Source::kFile) return "file:" + path;
  std::string out = "gen" + std::to_string(generator) + ":N=" + std::to_string(n);
  if (has_seed) out += ":seed=" + std::to_string(seed);
  return out;
}

DatasetSpec parse_dataset_spec(std::string_view text) {
  DatasetSpec spec;
  if (text.substr(0, 5) == "file:") {
    spec.source = DatasetSpec::Source::kFile;
    spec.path = std::string(text.substr(5));
    if (spec.path.empty()) throw std::invalid_argument("dataset: empty path");
    return spec;
  }
  const auto parts = split(text, ':');
  if (parts[0] == "gen1" || parts[0] == "gen2" || parts[0] == "gen3") {
    spec.generator = parts[0][3] - '0';
  } else {
    throw std::invalid_argument("unknown dataset '" + std::string(parts[0]) +
                                "' (expected gen1, gen2, gen3 or file:PATH)");
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    const auto key = parts[i].substr(0, eq);
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("bad dataset option '" +
                                  std::string(parts[i]) + "'");
    }
    const auto value = parts[i].substr(eq + 1);
    if (key == "N") {
      spec.n = static_cast<int>(parse_int(value));
      if (spec.n < 1) throw std::invalid_argument("dataset: N must be >= 1");
    } else if (key == "seed") {
      spec.seed = parse_uint(value);
      spec.has_seed = true;
    } else {
      throw std::invalid_argument("unknown dataset option '" +
                                  std::string(key) + "'");
    }
  }
  return spec;
}

TrainingSet materialize(const DatasetSpec& spec, std::uint64_t default_seed) {
  if (spec.source == DatasetSpec::Source::kFile) return load_dataset(spec.path);
  Stream rng = derive_stream(spec.has_seed ? spec.seed : default_seed,
                             {static_cast<std::uint64_t>(spec.generator),
                              kDataRole});
  switch (spec.generator) {
    case 1:
      return generate_set1(spec.n, rng);
    case 2:
      return generate_set2(spec.n, rng);
    default:
      return generate_set3(spec.n, rng);
  }
}

}  // namespace qppp
