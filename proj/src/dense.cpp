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

#include "qppp/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace qppp {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kNegligible = 1e-15;

std::size_t bit(int q) { return std::size_t{1} << q; }

void check_qubit(const DenseState& s, int q) {
  if (q < 0 || q >= s.layout().total_qubits()) {
    throw std::out_of_range("dense: qubit " + std::to_string(q) +
                            " out of range");
  }
}

BitString pattern_at(std::size_t index, std::span<const int> qubits) {
  BitString out(static_cast<int>(qubits.size()));
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    out.set(static_cast<int>(i), (index >> qubits[i]) & 1u);
  }
  return out;
}

void project(DenseState& s, std::span<const int> qubits,
             const BitString& outcome, double p) {
  const double scale = 1.0 / std::sqrt(p);
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = pattern_at(i, qubits) == outcome ? a[i] * scale : Amplitude{};
  }
}

// Projects the result qubit on |+> (minus = false) or |->, then resets it.
void project_pm(DenseState& s, bool minus, double p) {
  const double scale = kInvSqrt2 / std::sqrt(p);
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); i += 2) {
    const Amplitude a0 = a[i];
    const Amplitude a1 = a[i + 1];
    a[i] = (minus ? a0 - a1 : a0 + a1) * scale;
    a[i + 1] = Amplitude{};
  }
}

std::string to_record_piece(const BitString& b) { return b.to_string(); }

void append_record(TraceRecord& record, const std::string& piece) {
  if (!record.empty()) record += '|';
  record += piece;
}

}  // namespace

DenseState::DenseState(RegisterLayout layout) : layout_(layout) {
  if (layout.total_qubits() > kMaxQubits) {
    throw std::length_error("DenseState: " +
                            std::to_string(layout.total_qubits()) +
                            " qubits exceeds the dense oracle cap of " +
                            std::to_string(kMaxQubits));
  }
  amps_.assign(bit(layout.total_qubits()), Amplitude{});
  amps_[0] = 1.0;
}

std::size_t DenseState::index_of(const BitString& bits) {
  std::size_t index = 0;
  for (int q = 0; q < bits.size(); ++q) {
    if (bits[q]) index |= bit(q);
  }
  return index;
}

BitString DenseState::bits_of(std::size_t index) const {
  BitString out(layout_.total_qubits());
  for (int q = 0; q < out.size(); ++q) out.set(q, (index >> q) & 1u);
  return out;
}

double DenseState::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

int DenseState::nonzero_count(double tol) const {
  int count = 0;
  for (const auto& a : amps_) count += std::abs(a) > tol ? 1 : 0;
  return count;
}

DenseState to_dense(const BranchState& state) {
  DenseState out(state.layout());
  auto& a = out.amplitudes();
  a[0] = 0.0;
  for (const auto& br : state.branches()) {
    a[DenseState::index_of(br.bits)] = br.amplitude;
  }
  return out;
}

void apply_gate(DenseState& state, const Gate& gate) {
  auto& a = state.amplitudes();
  switch (gate.kind) {
    case Gate::Kind::kCnot:
      check_qubit(state, gate.a);
      check_qubit(state, gate.b);
      if (gate.a == gate.b) throw std::invalid_argument("CNOT: same qubit");
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & bit(gate.a)) && !(i & bit(gate.b))) {
          std::swap(a[i], a[i | bit(gate.b)]);
        }
      }
      break;
    case Gate::Kind::kZ:
      check_qubit(state, gate.a);
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & bit(gate.a)) a[i] = -a[i];
      }
      break;
    case Gate::Kind::kSwap:
      check_qubit(state, gate.a);
      check_qubit(state, gate.b);
      if (gate.a == gate.b) break;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & bit(gate.a)) && !(i & bit(gate.b))) {
          std::swap(a[i], a[i ^ bit(gate.a) ^ bit(gate.b)]);
        }
      }
      break;
  }
}

void apply_hadamard(DenseState& state, int qubit) {
  check_qubit(state, qubit);
  auto& a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i & bit(qubit)) continue;
    const Amplitude a0 = a[i];
    const Amplitude a1 = a[i | bit(qubit)];
    a[i] = (a0 + a1) * kInvSqrt2;
    a[i | bit(qubit)] = (a0 - a1) * kInvSqrt2;
  }
}

void apply_x(DenseState& state, int qubit) {
  check_qubit(state, qubit);
  auto& a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(i & bit(qubit))) std::swap(a[i], a[i | bit(qubit)]);
  }
}

void apply_uf(DenseState& state, const Oracle& f) {
  auto& a = state.amplitudes();
  for (std::size_t i = 1; i < a.size(); i += 2) {
    if (a[i] == Amplitude{}) continue;
    if (f(data_register(state.bits_of(i), state.layout()))) a[i] = -a[i];
  }
}

DenseState prepare_test_state_dense(const RegisterLayout& layout,
                                    const BitString& y, bool u, int m) {
  if (y.size() != layout.data_qubits()) {
    throw std::invalid_argument("prepare_test_state_dense: bad y length");
  }
  if (m < 0 || m > layout.data_qubits() || (m == 0 && u)) {
    throw std::invalid_argument("prepare_test_state_dense: bad (u, m)");
  }
  DenseState s(layout);
  for (int j = 0; j < y.size(); ++j) {
    if (y[j]) apply_x(s, 1 + j);
  }
  apply_hadamard(s, kResultQubit);
  if (m >= 1) {
    apply_gate(s, Gate::cnot(kResultQubit, 1));
    if (u) apply_gate(s, Gate::z(kResultQubit));
    apply_gate(s, Gate::swap(1, m));
  }
  return s;
}

std::vector<std::pair<BitString, double>> outcome_distribution(
    const DenseState& state, std::span<const int> qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("outcome_distribution: no qubits");
  }
  for (int q : qubits) check_qubit(state, q);
  std::map<BitString, double> acc;
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = std::norm(a[i]);
    if (p > 0.0) acc[pattern_at(i, qubits)] += p;
  }
  return {acc.begin(), acc.end()};
}

std::pair<double, double> pm_probabilities(const DenseState& state) {
  double plus = 0.0;
  double minus = 0.0;
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < a.size(); i += 2) {
    plus += std::norm(a[i] + a[i + 1]) / 2.0;
    minus += std::norm(a[i] - a[i + 1]) / 2.0;
  }
  return {plus, minus};
}

BranchTraceRun run_trace(BranchState state, const Trace& trace, Stream& rng) {
  TraceRecord record;
  for (const auto& op : trace.ops) {
    switch (op.kind) {
      case TraceOp::Kind::kGate:
        state = apply_gate(std::move(state), op.gate);
        break;
      case TraceOp::Kind::kOracle:
        state = apply_uf(std::move(state), trace.oracle);
        break;
      case TraceOp::Kind::kMeasure: {
        auto m = measure_computational(std::move(state), op.qubits, rng);
        append_record(record, to_record_piece(m.outcome));
        state = std::move(m.state);
        break;
      }
      case TraceOp::Kind::kMeasurePm: {
        auto m = measure_result_pm(std::move(state), rng);
        append_record(record, m.outcome == PmOutcome::kPlus ? "0" : "1");
        state = std::move(m.state);
        break;
      }
    }
  }
  return {std::move(record), std::move(state)};
}

DenseTraceRun run_trace_dense(DenseState state, const Trace& trace,
                              Stream& rng) {
  TraceRecord record;
  for (const auto& op : trace.ops) {
    switch (op.kind) {
      case TraceOp::Kind::kGate:
        apply_gate(state, op.gate);
        break;
      case TraceOp::Kind::kOracle:
        apply_uf(state, trace.oracle);
        break;
      case TraceOp::Kind::kMeasure: {
        const auto dist = outcome_distribution(state, op.qubits);
        double r = uniform01(rng);
        std::size_t pick = dist.size() - 1;
        for (std::size_t i = 0; i < dist.size(); ++i) {
          if (r < dist[i].second) {
            pick = i;
            break;
          }
          r -= dist[i].second;
        }
        project(state, op.qubits, dist[pick].first, dist[pick].second);
        append_record(record, to_record_piece(dist[pick].first));
        break;
      }
      case TraceOp::Kind::kMeasurePm: {
        const auto [plus, minus] = pm_probabilities(state);
        const bool is_minus =
            plus <= kNegligible ? true
                                : (minus <= kNegligible ? false
                                                        : uniform01(rng) >= plus);
        project_pm(state, is_minus, is_minus ? minus : plus);
        append_record(record, is_minus ? "1" : "0");
        break;
      }
    }
  }
  return {std::move(record), std::move(state)};
}

namespace {

void enumerate(DenseState state, const Trace& trace, std::size_t step,
               const TraceRecord& record, double weight,
               std::map<TraceRecord, double>& out) {
  for (; step < trace.ops.size(); ++step) {
    const auto& op = trace.ops[step];
    if (op.kind == TraceOp::Kind::kGate) {
      apply_gate(state, op.gate);
    } else if (op.kind == TraceOp::Kind::kOracle) {
      apply_uf(state, trace.oracle);
    } else if (op.kind == TraceOp::Kind::kMeasure) {
      for (const auto& [outcome, p] : outcome_distribution(state, op.qubits)) {
        if (p <= kNegligible) continue;
        DenseState next = state;
        project(next, op.qubits, outcome, p);
        TraceRecord r = record;
        append_record(r, to_record_piece(outcome));
        enumerate(std::move(next), trace, step + 1, r, weight * p, out);
      }
      return;
    } else {
      const auto [plus, minus] = pm_probabilities(state);
      for (int sign = 0; sign < 2; ++sign) {
        const double p = sign ? minus : plus;
        if (p <= kNegligible) continue;
        DenseState next = state;
        project_pm(next, sign == 1, p);
        TraceRecord r = record;
        append_record(r, sign ? "1" : "0");
        enumerate(std::move(next), trace, step + 1, r, weight * p, out);
      }
      return;
    }
  }
  out[record] += weight;
}

}  // namespace

std::map<TraceRecord, double> trace_distribution_dense(const DenseState& state,
                                                       const Trace& trace) {
  std::map<TraceRecord, double> out;
  enumerate(state, trace, 0, TraceRecord{}, 1.0, out);
  return out;
}

}  // namespace qppp
