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

// Exact simulation of the structured states used by the data system.
//
// Every gate the protocol needs (CNOT, Z, SWAP, the phase oracle U_f) maps a
// computational basis state to a basis state up to sign, and the only source
// of superposition is the |+> on the result qubit. A state is therefore kept
// as a short list of (amplitude, basis string) branches, which stays exact
// for registers far beyond dense-simulation range.
//
// Qubit numbering: 0 is the result qubit, 1..nk are data qubits (attribute j
// occupies (j-1)n+1 .. jn, most significant bit first), and ancillas follow.

#ifndef QPPP_QSTATE_HPP_
#define QPPP_QSTATE_HPP_

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "qppp/bitstring.hpp"
#include "qppp/rng.hpp"

namespace qppp {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr int kResultQubit = 0;

struct RegisterLayout {
  int bits_per_attribute = 1;  // n
  int attributes = 1;          // k
  int ancillas = 0;

  RegisterLayout() = default;
  RegisterLayout(int n, int k, int ancilla_count = 0);

  int data_qubits() const noexcept { return bits_per_attribute * attributes; }
  int total_qubits() const noexcept { return 1 + data_qubits() + ancillas; }
  int first_ancilla() const noexcept { return 1 + data_qubits(); }
  /// First qubit of attribute j (0-based).
  int attribute_qubit(int j) const noexcept {
    return 1 + j * bits_per_attribute;
  }
  bool is_data_qubit(int q) const noexcept {
    return q >= 1 && q <= data_qubits();
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) =
      default;
};

struct Gate {
  enum class Kind { kCnot, kZ, kSwap };

  Kind kind = Kind::kZ;
  int a = 0;  // control for CNOT, target for Z
  int b = 0;  // target for CNOT

  static Gate cnot(int control, int target) {
    return {Kind::kCnot, control, target};
  }
  static Gate z(int qubit) { return {Kind::kZ, qubit, qubit}; }
  static Gate swap(int first, int second) {
    return {Kind::kSwap, first, second};
  }

  std::string to_string() const;
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Boolean function of the data register (length nk; data qubit j is bit j-1).
using Oracle = std::function<bool(const BitString& data)>;

struct Branch {
  Amplitude amplitude;
  BitString bits;  // length layout.total_qubits()
};

using BranchList = boost::container::small_vector<Branch, 4>;

/// Pure state as a list of distinct basis branches with nonzero amplitude.
class BranchState {
 public:
  /// Validates lengths, distinctness, and unit norm.
  BranchState(RegisterLayout layout, BranchList branches);

  static BranchState basis(RegisterLayout layout, const BitString& bits);

  const RegisterLayout& layout() const noexcept { return layout_; }
  const BranchList& branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }

  double norm_squared() const noexcept;
  /// Number of distinct data-register patterns across branches.
  int distinct_data_patterns() const;
  /// Sum over branches of |a - a'|, matched by basis string; states with
  /// different supports compare unequal.
  bool approx_equal(const BranchState& other, double tol = 1e-12) const;

  /// Appends `count` ancilla qubits in |0>.
  BranchState with_ancillas(int count) const;

  std::string to_string() const;

 private:
  struct Unchecked {};
  BranchState(Unchecked, RegisterLayout layout, BranchList branches)
      : layout_(layout), branches_(std::move(branches)) {}

  RegisterLayout layout_;
  BranchList branches_;

  friend BranchState prepare_test_state(const RegisterLayout&,
                                        const BitString&, bool, int);
  friend BranchState apply_gate(BranchState, const Gate&);
  friend BranchState apply_uf(BranchState, const Oracle&);
  friend struct MeasurementAccess;
};

/// Data register (qubits 1..nk) of a full register string.
BitString data_register(const BitString& bits, const RegisterLayout& layout);

/// psi(y, u, m) = SWAP(1,m) Z_0^u CNOT(0->1) |+>|y> for m >= 1, and |+>|y>
/// for m = 0. Throws for m outside 0..nk, m = 0 with u = 1, or a bad y length.
BranchState prepare_test_state(const RegisterLayout& layout, const BitString& y,
                               bool u, int m);

/// Negates branches with result bit 1 and f(data) = 1.
BranchState apply_uf(BranchState state, const Oracle& f);

BranchState apply_gate(BranchState state, const Gate& gate);

/// The gates Alice applies after Bob returns a state: CNOT Z^u SWAP(1,m),
/// listed in application order. Empty for the computational round (m = 0).
std::vector<Gate> alice_uncompute_gates(bool u, int m);
/// The inverse sequence, SWAP(1,m) Z^u CNOT applied to |+>|y>.
std::vector<Gate> test_encoding_gates(bool u, int m);

struct Measurement {
  BitString outcome;  // one bit per measured qubit, in request order
  BranchState state;  // collapsed and renormalized
  double probability = 0.0;
};

/// Computational-basis measurement of `qubits` with Born-rule sampling.
Measurement measure_computational(BranchState state,
                                  std::span<const int> qubits, Stream& rng);

enum class PmOutcome { kPlus, kMinus };

struct PmMeasurement {
  PmOutcome outcome = PmOutcome::kPlus;
  double probability = 0.0;
  /// Post-measurement state of the other qubits; the consumed result qubit
  /// is reset to |0>.
  BranchState state;
};

/// Measures the result qubit in the {|+>, |->} basis.
PmMeasurement measure_result_pm(BranchState state, Stream& rng);

/// (p(+), p(-)) for the result qubit.
std::pair<double, double> pm_probabilities(const BranchState& state);

/// Exact outcome distribution of a computational measurement of `qubits`.
std::vector<std::pair<BitString, double>> outcome_distribution(
    const BranchState& state, std::span<const int> qubits);

}  // namespace qppp

#endif  // QPPP_QSTATE_HPP_
