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

// Dense statevector reference for small registers. Used only to check the
// branch simulator; nothing in the protocol path depends on it.

#ifndef QPPP_DENSE_HPP_
#define QPPP_DENSE_HPP_

#include <map>
#include <string>
#include <vector>

#include "qppp/qstate.hpp"

namespace qppp {

class DenseState {
 public:
  static constexpr int kMaxQubits = 14;

  /// |0...0> over the whole layout.
  explicit DenseState(RegisterLayout layout);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const std::vector<Amplitude>& amplitudes() const noexcept { return amps_; }
  std::vector<Amplitude>& amplitudes() noexcept { return amps_; }

  /// Basis index of a register string (qubit q is bit q of the index).
  static std::size_t index_of(const BitString& bits);
  BitString bits_of(std::size_t index) const;

  double norm_squared() const noexcept;
  int nonzero_count(double tol = 1e-15) const;

 private:
  RegisterLayout layout_;
  std::vector<Amplitude> amps_;
};

DenseState to_dense(const BranchState& state);

void apply_gate(DenseState& state, const Gate& gate);
void apply_hadamard(DenseState& state, int qubit);
void apply_x(DenseState& state, int qubit);
void apply_uf(DenseState& state, const Oracle& f);

/// Builds psi(y, u, m) gate by gate from |0...0>: X on the set bits of y,
/// H on the result qubit, then CNOT(0->1), Z^u and SWAP(1, m) when m >= 1.
DenseState prepare_test_state_dense(const RegisterLayout& layout,
                                    const BitString& y, bool u, int m);

std::vector<std::pair<BitString, double>> outcome_distribution(
    const DenseState& state, std::span<const int> qubits);
std::pair<double, double> pm_probabilities(const DenseState& state);

/// One step of a gate/measurement trace. Computational measurements record
/// one bit per listed qubit; a +/- measurement records a single bit
/// (0 for +, 1 for -) and resets the result qubit to |0>.
struct TraceOp {
  enum class Kind { kGate, kOracle, kMeasure, kMeasurePm };
  Kind kind = Kind::kGate;
  Gate gate;
  std::vector<int> qubits;

  static TraceOp gate_op(const Gate& g) { return {Kind::kGate, g, {}}; }
  static TraceOp oracle_op() { return {Kind::kOracle, {}, {}}; }
  static TraceOp measure_op(std::vector<int> q) {
    return {Kind::kMeasure, {}, std::move(q)};
  }
  static TraceOp measure_pm_op() { return {Kind::kMeasurePm, {}, {}}; }
};

struct Trace {
  std::vector<TraceOp> ops;
  Oracle oracle;
};

/// Measurement record of one trace execution, e.g. "0110|1".
using TraceRecord = std::string;

struct BranchTraceRun {
  TraceRecord record;
  BranchState state;
};
struct DenseTraceRun {
  TraceRecord record;
  DenseState state;
};

BranchTraceRun run_trace(BranchState state, const Trace& trace, Stream& rng);
DenseTraceRun run_trace_dense(DenseState state, const Trace& trace,
                              Stream& rng);

/// Exact distribution of trace records, enumerating every measurement
/// branch of the dense simulation.
std::map<TraceRecord, double> trace_distribution_dense(const DenseState& state,
                                                       const Trace& trace);

}  // namespace qppp

#endif  // QPPP_DENSE_HPP_
