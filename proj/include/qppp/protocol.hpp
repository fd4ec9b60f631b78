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

// Alice's three-round data system with a pluggable Bob.
//
// Each run hides the real input among two decoy rounds. Alice picks the
// position i of the data round, and one decoy tuple (y, u, m) shared by both
// test rounds. A run ends early when a data measurement disagrees with what
// Alice sent; otherwise the two test answers are compared at the end.

#ifndef QPPP_PROTOCOL_HPP_
#define QPPP_PROTOCOL_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qppp/qstate.hpp"

namespace qppp {

inline constexpr int kRoundsPerRun = 3;

struct BobStrategy {
  enum class Kind {
    kHonest,
    kMeasureSubset,     // computational measurement of `qubits`
    kEntangleCopy,      // CNOT-copy `qubits` into fresh ancillas
    kGuessMU,           // guess (m, u), undo, read, redo
    kMeasureAndResend,  // read everything, fabricate a test state
  };

  Kind kind = Kind::kHonest;
  std::vector<int> qubits;  // 1-based data qubits, sorted and unique
  /// Rounds (0-based) in which Bob deviates; he is honest in the others.
  std::array<bool, kRoundsPerRun> attack_rounds{true, true, true};

  static BobStrategy honest() { return {}; }
  static BobStrategy measure_subset(std::vector<int> qubits);
  static BobStrategy entangle_copy(std::vector<int> qubits);
  static BobStrategy guess_mu();
  static BobStrategy measure_and_resend();

  bool is_honest() const noexcept { return kind == Kind::kHonest; }
  bool attacks(int round) const noexcept {
    return kind != Kind::kHonest && attack_rounds[static_cast<std::size_t>(round)];
  }

  /// Throws std::invalid_argument if `qubits` does not fit `layout`.
  void validate(const RegisterLayout& layout) const;

  /// Canonical text form accepted by parse_strategy.
  std::string to_string() const;
};

/// Parses "honest", "measure:all", "measure:1,2,5", "entangle:3-6",
/// "guess", "resend", optionally followed by ":rounds=13" (attacked rounds,
/// 1-based digits).
BobStrategy parse_strategy(std::string_view text, const RegisterLayout& layout);

/// Alice's private coins for one run.
struct AliceChoice {
  int data_round = 0;  // 0-based position of the computational round
  BitString y;         // decoy data, length nk
  bool u = false;
  int m = 1;           // 1..nk
};

AliceChoice draw_alice_choice(const RegisterLayout& layout, Stream& alice);

/// Bob's per-run state. GuessMU and MeasureAndResend fix their guess of
/// (m, u) once per run.
struct BobSession {
  BobStrategy strategy;
  int guess_m = 0;
  bool guess_u = false;
};

BobSession start_bob_session(const BobStrategy& strategy,
                             const RegisterLayout& layout, Stream& bob);

/// A bit Bob wrote down: data qubit `qubit` (1-based) read as `value`.
struct BobRecord {
  int qubit = 0;
  bool value = false;
  friend bool operator==(const BobRecord&, const BobRecord&) = default;
};

struct BobAction {
  BranchState state;
  std::vector<BobRecord> records;
  /// Ancilla index -> data qubit it copied (EntangleCopy only).
  std::vector<int> ancilla_sources;
};

/// Bob's handling of one received state in round `round`.
BobAction bob_act(BranchState state, const Oracle& f, BobSession& session,
                  int round, Stream& bob);

enum class DetectionSite { kNone, kDataMismatch, kTestMismatch };

std::string_view to_string(DetectionSite site);

struct RoundRecord {
  int round = 0;
  bool data_round = false;
  BitString sent;       // y, or x for the data round
  bool u = false;
  int m = 0;
  std::vector<Gate> uncompute;
  BitString measured;   // Alice's data measurement
  std::optional<bool> result;
  std::vector<BobRecord> bob_records;
};

struct RoundResult {
  bool data_ok = true;
  std::optional<bool> result;  // absent when data_ok is false
  std::vector<BobRecord> bob_records;
  RoundRecord record;          // filled only when asked for
};

/// One call of Alice's procedure: prepare psi(y,u,m), hand it to Bob, undo
/// the encoding, check the data register, and read the result qubit in the
/// +/- basis (0 for +, 1 for -).
RoundResult alice_compute(const RegisterLayout& layout, const BitString& y,
                          bool u, int m, const Oracle& f, BobSession& session,
                          int round, Stream& alice, Stream& bob,
                          bool keep_record = false);

struct ProtocolOutcome {
  std::optional<bool> answer;
  bool detected = false;
  DetectionSite site = DetectionSite::kNone;
  /// Bob's data-round reads that match Alice's input.
  std::vector<BobRecord> leaked_bits;
  int rounds_executed = 0;
  AliceChoice choice;
  int bob_guess_m = 0;
  bool bob_guess_u = false;
  std::vector<RoundRecord> transcript;  // empty unless requested
};

struct ProtocolParams {
  RegisterLayout layout;
  Oracle f;
  bool keep_transcript = false;
};

/// Full three-round run; Alice's coins come from `alice`.
ProtocolOutcome run_data_system(const BitString& x, const ProtocolParams& params,
                                const BobStrategy& strategy, Stream& alice,
                                Stream& bob);

/// Same, with Alice's coins supplied by the caller.
ProtocolOutcome run_data_system_with(const BitString& x,
                                     const AliceChoice& choice,
                                     const ProtocolParams& params,
                                     const BobStrategy& strategy, Stream& alice,
                                     Stream& bob);

/// Line-oriented text form of a run (see docs/transcript.md).
std::string format_transcript(const ProtocolOutcome& outcome,
                              const RegisterLayout& layout,
                              const BobStrategy& strategy);

}  // namespace qppp

#endif  // QPPP_PROTOCOL_HPP_
