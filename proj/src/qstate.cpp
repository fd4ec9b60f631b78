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

#include "qppp/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qppp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
// Amplitudes below this magnitude squared are interference zeros.
constexpr double kZeroAmplitude2 = 1e-24;

void check_qubit(const RegisterLayout& layout, int q, const char* what) {
  if (q < 0 || q >= layout.total_qubits()) {
    throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(q) +
                            " outside register of " +
                            std::to_string(layout.total_qubits()) + " qubits");
  }
}

BitString pattern_of(const BitString& bits, std::span<const int> qubits) {
  BitString out(static_cast<int>(qubits.size()));
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    out.set(static_cast<int>(i), bits[qubits[i]]);
  }
  return out;
}

}  // namespace

struct MeasurementAccess {
  static BranchState make(RegisterLayout layout, BranchList branches) {
    return BranchState(BranchState::Unchecked{}, layout, std::move(branches));
  }
};

RegisterLayout::RegisterLayout(int n, int k, int ancilla_count)
    : bits_per_attribute(n), attributes(k), ancillas(ancilla_count) {
  if (n < 1 || k < 1 || ancilla_count < 0) {
    throw std::invalid_argument("RegisterLayout: need n >= 1, k >= 1, "
                                "ancillas >= 0");
  }
  if (total_qubits() > BitString::kMaxBits) {
    throw std::length_error("RegisterLayout: " +
                            std::to_string(total_qubits()) +
                            " qubits exceeds the supported maximum of " +
                            std::to_string(BitString::kMaxBits));
  }
}

std::string Gate::to_string() const {
  switch (kind) {
    case Kind::kCnot:
      return "CNOT(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::kZ:
      return "Z(" + std::to_string(a) + ")";
    case Kind::kSwap:
      return "SWAP(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return "?";
}

BranchState::BranchState(RegisterLayout layout, BranchList branches)
    : layout_(layout), branches_(std::move(branches)) {
  if (branches_.empty()) {
    throw std::invalid_argument("BranchState: no branches");
  }
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    if (branches_[i].bits.size() != layout_.total_qubits()) {
      throw std::invalid_argument("BranchState: branch length mismatch");
    }
    if (std::norm(branches_[i].amplitude) == 0.0) {
      throw std::invalid_argument("BranchState: zero amplitude branch");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (branches_[j].bits == branches_[i].bits) {
        throw std::invalid_argument("BranchState: duplicate basis string " +
                                    branches_[i].bits.to_string());
      }
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("BranchState: norm is not 1");
  }
}

BranchState BranchState::basis(RegisterLayout layout, const BitString& bits) {
  BranchList list;
  list.push_back({Amplitude(1.0, 0.0), bits});
  return BranchState(layout, std::move(list));
}

double BranchState::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& br : branches_) total += std::norm(br.amplitude);
  return total;
}

int BranchState::distinct_data_patterns() const {
  std::vector<BitString> seen;
  for (const auto& br : branches_) {
    BitString d = data_register(br.bits, layout_);
    if (std::find(seen.begin(), seen.end(), d) == seen.end()) {
      seen.push_back(d);
    }
  }
  return static_cast<int>(seen.size());
}

bool BranchState::approx_equal(const BranchState& other, double tol) const {
  if (!(layout_ == other.layout_) || branches_.size() != other.size()) {
    return false;
  }
  for (const auto& br : branches_) {
    auto it = std::find_if(
        other.branches_.begin(), other.branches_.end(),
        [&](const Branch& o) { return o.bits == br.bits; });
    if (it == other.branches_.end()) return false;
    if (std::abs(it->amplitude - br.amplitude) > tol) return false;
  }
  return true;
}

BranchState BranchState::with_ancillas(int count) const {
  RegisterLayout grown(layout_.bits_per_attribute, layout_.attributes,
                       layout_.ancillas + count);
  BranchList list;
  for (const auto& br : branches_) {
    list.push_back({br.amplitude, br.bits.resized(grown.total_qubits())});
  }
  return BranchState(Unchecked{}, grown, std::move(list));
}

std::string BranchState::to_string() const {
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& br : branches_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << br.amplitude.real();
    if (br.amplitude.imag() != 0.0) os << (br.amplitude.imag() < 0 ? "" : "+")
                                       << br.amplitude.imag() << "i";
    const std::string s = br.bits.to_string();
    os << ")|" << s.substr(0, 1) << "|" << s.substr(1, static_cast<std::size_t>(
                                                           layout_.data_qubits()));
    if (layout_.ancillas > 0) {
      os << "|" << s.substr(static_cast<std::size_t>(layout_.first_ancilla()));
    }
    os << ">";
  }
  return os.str();
}

BitString data_register(const BitString& bits, const RegisterLayout& layout) {
  return bits.slice(1, layout.data_qubits());
}

BranchState prepare_test_state(const RegisterLayout& layout, const BitString& y,
                               bool u, int m) {
  const int nk = layout.data_qubits();
  if (y.size() != nk) {
    throw std::invalid_argument("prepare_test_state: y has " +
                                std::to_string(y.size()) + " bits, expected " +
                                std::to_string(nk));
  }
  if (m < 0 || m > nk) {
    throw std::out_of_range("prepare_test_state: m=" + std::to_string(m) +
                            " outside 0.." + std::to_string(nk));
  }
  if (m == 0 && u) {
    throw std::invalid_argument(
        "prepare_test_state: the computational state has u = 0");
  }
  BitString base(layout.total_qubits());
  base = base.with_slice(1, y);
  BitString excited = base;
  excited.set(kResultQubit);
  const double sign = u ? -1.0 : 1.0;
  if (m >= 1) {
    excited.flip(1);
    base.swap_bits(1, m);
    excited.swap_bits(1, m);
  }
  BranchList list;
  list.push_back({Amplitude(kInvSqrt2, 0.0), base});
  list.push_back({Amplitude(sign * kInvSqrt2, 0.0), excited});
  return BranchState(BranchState::Unchecked{}, layout, std::move(list));
}

BranchState apply_uf(BranchState state, const Oracle& f) {
  for (auto& br : state.branches_) {
    if (br.bits[kResultQubit] && f(data_register(br.bits, state.layout_))) {
      br.amplitude = -br.amplitude;
    }
  }
  return state;
}

BranchState apply_gate(BranchState state, const Gate& gate) {
  const RegisterLayout& layout = state.layout_;
  switch (gate.kind) {
    case Gate::Kind::kCnot:
      check_qubit(layout, gate.a, "CNOT control");
      check_qubit(layout, gate.b, "CNOT target");
      if (gate.a == gate.b) {
        throw std::invalid_argument("CNOT: control equals target");
      }
      for (auto& br : state.branches_) {
        if (br.bits[gate.a]) br.bits.flip(gate.b);
      }
      break;
    case Gate::Kind::kZ:
      check_qubit(layout, gate.a, "Z");
      for (auto& br : state.branches_) {
        if (br.bits[gate.a]) br.amplitude = -br.amplitude;
      }
      break;
    case Gate::Kind::kSwap:
      check_qubit(layout, gate.a, "SWAP");
      check_qubit(layout, gate.b, "SWAP");
      if (gate.a != gate.b) {
        for (auto& br : state.branches_) br.bits.swap_bits(gate.a, gate.b);
      }
      break;
  }
  return state;
}

std::vector<Gate> alice_uncompute_gates(bool u, int m) {
  std::vector<Gate> gates;
  if (m == 0) return gates;
  gates.push_back(Gate::swap(1, m));
  if (u) gates.push_back(Gate::z(kResultQubit));
  gates.push_back(Gate::cnot(kResultQubit, 1));
  return gates;
}

std::vector<Gate> test_encoding_gates(bool u, int m) {
  std::vector<Gate> gates;
  if (m == 0) return gates;
  gates.push_back(Gate::cnot(kResultQubit, 1));
  if (u) gates.push_back(Gate::z(kResultQubit));
  gates.push_back(Gate::swap(1, m));
  return gates;
}

std::vector<std::pair<BitString, double>> outcome_distribution(
    const BranchState& state, std::span<const int> qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("outcome_distribution: no qubits");
  }
  for (int q : qubits) check_qubit(state.layout(), q, "measure");
  std::vector<std::pair<BitString, double>> dist;
  for (const auto& br : state.branches()) {
    BitString p = pattern_of(br.bits, qubits);
    auto it = std::find_if(dist.begin(), dist.end(),
                           [&](const auto& e) { return e.first == p; });
    if (it == dist.end()) {
      dist.emplace_back(p, std::norm(br.amplitude));
    } else {
      it->second += std::norm(br.amplitude);
    }
  }
  return dist;
}

Measurement measure_computational(BranchState state,
                                  std::span<const int> qubits, Stream& rng) {
  auto dist = outcome_distribution(state, qubits);
  std::size_t pick = dist.size() - 1;
  if (dist.size() > 1) {
    double r = uniform01(rng) * state.norm_squared();
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (r < dist[i].second) {
        pick = i;
        break;
      }
      r -= dist[i].second;
    }
  }
  const BitString& outcome = dist[pick].first;
  const double p = dist[pick].second;
  const double scale = 1.0 / std::sqrt(p);
  BranchList kept;
  for (const auto& br : state.branches()) {
    if (pattern_of(br.bits, qubits) == outcome) {
      kept.push_back({br.amplitude * scale, br.bits});
    }
  }
  return {outcome, MeasurementAccess::make(state.layout(), std::move(kept)), p};
}

namespace {

struct PmGroup {
  BitString rest;  // branch string with the result bit cleared
  Amplitude zero{0.0, 0.0};
  Amplitude one{0.0, 0.0};
};

boost::container::small_vector<PmGroup, 4> group_by_rest(
    const BranchState& state) {
  boost::container::small_vector<PmGroup, 4> groups;
  for (const auto& br : state.branches()) {
    BitString rest = br.bits;
    rest.set(kResultQubit, false);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const PmGroup& g) { return g.rest == rest; });
    if (it == groups.end()) {
      groups.push_back({rest, {}, {}});
      it = groups.end() - 1;
    }
    (br.bits[kResultQubit] ? it->one : it->zero) += br.amplitude;
  }
  return groups;
}

}  // namespace

std::pair<double, double> pm_probabilities(const BranchState& state) {
  double plus = 0.0;
  double minus = 0.0;
  for (const auto& g : group_by_rest(state)) {
    plus += std::norm(g.zero + g.one) / 2.0;
    minus += std::norm(g.zero - g.one) / 2.0;
  }
  return {plus, minus};
}

PmMeasurement measure_result_pm(BranchState state, Stream& rng) {
  const auto groups = group_by_rest(state);
  double plus = 0.0;
  double minus = 0.0;
  for (const auto& g : groups) {
    plus += std::norm(g.zero + g.one) / 2.0;
    minus += std::norm(g.zero - g.one) / 2.0;
  }
  PmOutcome outcome;
  if (minus <= kZeroAmplitude2) {
    outcome = PmOutcome::kPlus;
  } else if (plus <= kZeroAmplitude2) {
    outcome = PmOutcome::kMinus;
  } else {
    outcome = uniform01(rng) * (plus + minus) < plus ? PmOutcome::kPlus
                                                     : PmOutcome::kMinus;
  }
  const double p = outcome == PmOutcome::kPlus ? plus : minus;
  const double scale = kInvSqrt2 / std::sqrt(p);
  BranchList kept;
  for (const auto& g : groups) {
    const Amplitude a = outcome == PmOutcome::kPlus ? (g.zero + g.one)
                                                    : (g.zero - g.one);
    if (std::norm(a) > kZeroAmplitude2) kept.push_back({a * scale, g.rest});
  }
  return {outcome, p,
          MeasurementAccess::make(state.layout(), std::move(kept))};
}

}  // namespace qppp
