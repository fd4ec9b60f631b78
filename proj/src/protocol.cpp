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

#include "qppp/protocol.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qppp/text.hpp"

namespace qppp {

namespace {

std::vector<int> normalized(std::vector<int> qubits) {
  std::sort(qubits.begin(), qubits.end());
  qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
  return qubits;
}

std::vector<int> data_qubit_list(const RegisterLayout& layout) {
  std::vector<int> q(static_cast<std::size_t>(layout.data_qubits()));
  for (int i = 0; i < layout.data_qubits(); ++i) q[static_cast<std::size_t>(i)] = i + 1;
  return q;
}

std::vector<int> parse_qubit_set(std::string_view s,
                                 const RegisterLayout& layout) {
  if (s == "all") return data_qubit_list(layout);
  std::vector<int> out;
  for (auto part : split(s, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(static_cast<int>(parse_int(part)));
    } else {
      const int lo = static_cast<int>(parse_int(part.substr(0, dash)));
      const int hi = static_cast<int>(parse_int(part.substr(dash + 1)));
      if (hi < lo) throw std::invalid_argument("qubit range reversed");
      for (int q = lo; q <= hi; ++q) out.push_back(q);
    }
  }
  return out;
}

std::string format_qubit_set(const std::vector<int>& q) {
  std::string out;
  for (std::size_t i = 0; i < q.size();) {
    std::size_t j = i;
    while (j + 1 < q.size() && q[j + 1] == q[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(q[i]);
    if (j > i) out += "-" + std::to_string(q[j]);
    i = j + 1;
  }
  return out;
}

std::string format_records(const std::vector<BobRecord>& records) {
  if (records.empty()) return "-";
  std::string out;
  for (const auto& r : records) {
    if (!out.empty()) out += ',';
    out += std::to_string(r.qubit) + ":" + (r.value ? "1" : "0");
  }
  return out;
}

BitString random_bits(int width, Stream& rng) {
  BitString out(width);
  std::uint64_t word = 0;
  for (int i = 0; i < width; ++i) {
    if ((i & 63) == 0) word = rng();
    out.set(i, (word >> (i & 63)) & 1u);
  }
  return out;
}

}  // namespace

BobStrategy BobStrategy::measure_subset(std::vector<int> qubits) {
  BobStrategy s;
  s.kind = Kind::kMeasureSubset;
  s.qubits = normalized(std::move(qubits));
  return s;
}

BobStrategy BobStrategy::entangle_copy(std::vector<int> qubits) {
  BobStrategy s;
  s.kind = Kind::kEntangleCopy;
  s.qubits = normalized(std::move(qubits));
  return s;
}

BobStrategy BobStrategy::guess_mu() {
  BobStrategy s;
  s.kind = Kind::kGuessMU;
  return s;
}

BobStrategy BobStrategy::measure_and_resend() {
  BobStrategy s;
  s.kind = Kind::kMeasureAndResend;
  return s;
}

void BobStrategy::validate(const RegisterLayout& layout) const {
  const bool needs_set =
      kind == Kind::kMeasureSubset || kind == Kind::kEntangleCopy;
  if (needs_set && qubits.empty()) {
    throw std::invalid_argument("BobStrategy: empty qubit set");
  }
  if (!needs_set && !qubits.empty()) {
    throw std::invalid_argument("BobStrategy: qubit set given for " +
                                to_string());
  }
  for (int q : qubits) {
    if (!layout.is_data_qubit(q)) {
      throw std::invalid_argument("BobStrategy: qubit " + std::to_string(q) +
                                  " is not a data qubit");
    }
  }
}

std::string BobStrategy::to_string() const {
  std::string out;
  switch (kind) {
    case Kind::kHonest:
      return "honest";
    case Kind::kMeasureSubset:
      out = "measure:" + format_qubit_set(qubits);
      break;
    case Kind::kEntangleCopy:
      out = "entangle:" + format_qubit_set(qubits);
      break;
    case Kind::kGuessMU:
      out = "guess";
      break;
    case Kind::kMeasureAndResend:
      out = "resend";
      break;
  }
  if (attack_rounds != std::array<bool, kRoundsPerRun>{true, true, true}) {
    out += ":rounds=";
    for (int r = 0; r < kRoundsPerRun; ++r) {
      if (attack_rounds[static_cast<std::size_t>(r)]) out += std::to_string(r + 1);
    }
  }
  return out;
}

BobStrategy parse_strategy(std::string_view text,
                           const RegisterLayout& layout) {
  auto parts = split(text, ':');
  BobStrategy s;
  std::size_t next = 1;
  if (parts[0] == "honest") {
    s = BobStrategy::honest();
  } else if (parts[0] == "measure" || parts[0] == "entangle") {
    if (parts.size() < 2) {
      throw std::invalid_argument("strategy '" + std::string(text) +
                                  "' needs a qubit set");
    }
    auto q = parse_qubit_set(parts[1], layout);
    s = parts[0] == "measure" ? BobStrategy::measure_subset(std::move(q))
                              : BobStrategy::entangle_copy(std::move(q));
    next = 2;
  } else if (parts[0] == "guess") {
    s = BobStrategy::guess_mu();
  } else if (parts[0] == "resend") {
    s = BobStrategy::measure_and_resend();
  } else {
    throw std::invalid_argument("unknown strategy '" + std::string(parts[0]) +
                                "'");
  }
  for (; next < parts.size(); ++next) {
    const auto p = parts[next];
    if (p.substr(0, 7) != "rounds=" || p.size() == 7) {
      throw std::invalid_argument("bad strategy option '" + std::string(p) +
                                  "'");
    }
    s.attack_rounds = {false, false, false};
    for (char c : p.substr(7)) {
      if (c < '1' || c > '3') {
        throw std::invalid_argument("rounds must be digits 1-3");
      }
      s.attack_rounds[static_cast<std::size_t>(c - '1')] = true;
    }
  }
  s.validate(layout);
  return s;
}

AliceChoice draw_alice_choice(const RegisterLayout& layout, Stream& alice) {
  AliceChoice c;
  c.data_round = uniform_int(alice, 0, kRoundsPerRun - 1);
  c.y = random_bits(layout.data_qubits(), alice);
  c.u = fair_coin(alice);
  c.m = uniform_int(alice, 1, layout.data_qubits());
  return c;
}

BobSession start_bob_session(const BobStrategy& strategy,
                             const RegisterLayout& layout, Stream& bob) {
  BobSession s{strategy, 0, false};
  if (strategy.kind == BobStrategy::Kind::kGuessMU ||
      strategy.kind == BobStrategy::Kind::kMeasureAndResend) {
    s.guess_m = uniform_int(bob, 1, layout.data_qubits());
    s.guess_u = fair_coin(bob);
  }
  return s;
}

BobAction bob_act(BranchState state, const Oracle& f, BobSession& session,
                  int round, Stream& bob) {
  const BobStrategy& st = session.strategy;
  std::vector<BobRecord> records;
  std::vector<int> sources;
  if (!st.attacks(round)) {
    return {apply_uf(std::move(state), f), {}, {}};
  }
  const RegisterLayout layout = state.layout();
  const int nk = layout.data_qubits();
  switch (st.kind) {
    case BobStrategy::Kind::kHonest:
      break;
    case BobStrategy::Kind::kMeasureSubset: {
      auto m = measure_computational(std::move(state), st.qubits, bob);
      for (std::size_t i = 0; i < st.qubits.size(); ++i) {
        records.push_back({st.qubits[i], m.outcome[static_cast<int>(i)]});
      }
      state = std::move(m.state);
      break;
    }
    case BobStrategy::Kind::kEntangleCopy: {
      const int first = layout.total_qubits();
      state = state.with_ancillas(static_cast<int>(st.qubits.size()));
      for (std::size_t j = 0; j < st.qubits.size(); ++j) {
        state = apply_gate(std::move(state),
                           Gate::cnot(st.qubits[j], first + static_cast<int>(j)));
      }
      sources = st.qubits;
      break;
    }
    case BobStrategy::Kind::kGuessMU: {
      for (const auto& g : alice_uncompute_gates(session.guess_u, session.guess_m)) {
        state = apply_gate(std::move(state), g);
      }
      auto m = measure_computational(std::move(state), data_qubit_list(layout), bob);
      BitString read = m.outcome;
      read.swap_bits(0, session.guess_m - 1);
      for (int q = 1; q <= nk; ++q) records.push_back({q, read[q - 1]});
      state = std::move(m.state);
      for (const auto& g : test_encoding_gates(session.guess_u, session.guess_m)) {
        state = apply_gate(std::move(state), g);
      }
      break;
    }
    case BobStrategy::Kind::kMeasureAndResend: {
      std::vector<int> all(static_cast<std::size_t>(nk + 1));
      for (int q = 0; q <= nk; ++q) all[static_cast<std::size_t>(q)] = q;
      auto m = measure_computational(std::move(state), all, bob);
      BitString z = m.outcome.slice(1, nk);
      for (int q = 1; q <= nk; ++q) records.push_back({q, z[q - 1]});
      BitString y = z;
      if (m.outcome[0]) y.flip(session.guess_m - 1);
      y.swap_bits(0, session.guess_m - 1);
      state = prepare_test_state(layout, y, session.guess_u, session.guess_m);
      break;
    }
  }
  return {apply_uf(std::move(state), f), std::move(records), std::move(sources)};
}

std::string_view to_string(DetectionSite site) {
  switch (site) {
    case DetectionSite::kNone:
      return "none";
    case DetectionSite::kDataMismatch:
      return "data-mismatch";
    case DetectionSite::kTestMismatch:
      return "test-mismatch";
  }
  return "?";
}

RoundResult alice_compute(const RegisterLayout& layout, const BitString& y,
                          bool u, int m, const Oracle& f, BobSession& session,
                          int round, Stream& alice, Stream& bob,
                          bool keep_record) {
  RoundResult res;
  BobAction act =
      bob_act(prepare_test_state(layout, y, u, m), f, session, round, bob);
  BranchState state = std::move(act.state);
  const auto gates = alice_uncompute_gates(u, m);
  for (const auto& g : gates) state = apply_gate(std::move(state), g);

  Measurement data =
      measure_computational(std::move(state), data_qubit_list(layout), alice);
  res.data_ok = data.outcome == y;
  state = std::move(data.state);
  if (res.data_ok) {
    PmMeasurement pm = measure_result_pm(std::move(state), alice);
    res.result = pm.outcome == PmOutcome::kMinus;
    state = std::move(pm.state);
  }
  res.bob_records = std::move(act.records);
  if (!act.ancilla_sources.empty()) {
    const int first = state.layout().total_qubits() -
                      static_cast<int>(act.ancilla_sources.size());
    std::vector<int> anc(act.ancilla_sources.size());
    for (std::size_t j = 0; j < anc.size(); ++j) {
      anc[j] = first + static_cast<int>(j);
    }
    auto read = measure_computational(std::move(state), anc, bob);
    for (std::size_t j = 0; j < anc.size(); ++j) {
      res.bob_records.push_back(
          {act.ancilla_sources[j], read.outcome[static_cast<int>(j)]});
    }
  }
  if (keep_record) {
    res.record.round = round;
    res.record.data_round = m == 0;
    res.record.sent = y;
    res.record.u = u;
    res.record.m = m;
    res.record.uncompute = gates;
    res.record.measured = data.outcome;
    res.record.result = res.result;
    res.record.bob_records = res.bob_records;
  }
  return res;
}

ProtocolOutcome run_data_system(const BitString& x, const ProtocolParams& params,
                                const BobStrategy& strategy, Stream& alice,
                                Stream& bob) {
  const AliceChoice choice = draw_alice_choice(params.layout, alice);
  return run_data_system_with(x, choice, params, strategy, alice, bob);
}

ProtocolOutcome run_data_system_with(const BitString& x,
                                     const AliceChoice& choice,
                                     const ProtocolParams& params,
                                     const BobStrategy& strategy, Stream& alice,
                                     Stream& bob) {
  const RegisterLayout& layout = params.layout;
  if (x.size() != layout.data_qubits()) {
    throw std::invalid_argument("run_data_system: input has " +
                                std::to_string(x.size()) + " bits, expected " +
                                std::to_string(layout.data_qubits()));
  }
  if (choice.data_round < 0 || choice.data_round >= kRoundsPerRun ||
      choice.m < 1 || choice.m > layout.data_qubits()) {
    throw std::invalid_argument("run_data_system: bad Alice choice");
  }
  strategy.validate(layout);

  ProtocolOutcome out;
  out.choice = choice;
  BobSession session = start_bob_session(strategy, layout, bob);
  out.bob_guess_m = session.guess_m;
  out.bob_guess_u = session.guess_u;

  std::optional<bool> data_answer;
  std::array<bool, 2> tests{};
  int test_count = 0;
  for (int round = 0; round < kRoundsPerRun; ++round) {
    const bool is_data = round == choice.data_round;
    RoundResult r =
        is_data ? alice_compute(layout, x, false, 0, params.f, session, round,
                                alice, bob, params.keep_transcript)
                : alice_compute(layout, choice.y, choice.u, choice.m, params.f,
                                session, round, alice, bob,
                                params.keep_transcript);
    out.rounds_executed = round + 1;
    if (is_data) {
      for (const auto& rec : r.bob_records) {
        if (x[rec.qubit - 1] == rec.value) out.leaked_bits.push_back(rec);
      }
    }
    if (params.keep_transcript) out.transcript.push_back(std::move(r.record));
    if (!r.data_ok) {
      out.detected = true;
      out.site = DetectionSite::kDataMismatch;
      return out;
    }
    if (is_data) {
      data_answer = r.result;
    } else {
      tests[static_cast<std::size_t>(test_count++)] = *r.result;
    }
  }
  if (tests[0] != tests[1]) {
    out.detected = true;
    out.site = DetectionSite::kTestMismatch;
    return out;
  }
  out.answer = data_answer;
  return out;
}

std::string format_transcript(const ProtocolOutcome& outcome,
                              const RegisterLayout& layout,
                              const BobStrategy& strategy) {
  std::ostringstream os;
  const auto& c = outcome.choice;
  os << "qppp-transcript 1\n";
  os << "run n=" << layout.bits_per_attribute << " k=" << layout.attributes
     << " strategy=" << strategy.to_string()
     << " data_round=" << c.data_round + 1 << " y=" << c.y.to_string()
     << " u=" << c.u << " m=" << c.m << " bob_m=" << outcome.bob_guess_m
     << " bob_u=" << outcome.bob_guess_u << "\n";
  for (const auto& r : outcome.transcript) {
    os << "round index=" << r.round + 1
       << " type=" << (r.data_round ? "data" : "test")
       << " sent=" << r.sent.to_string() << " u=" << r.u << " m=" << r.m
       << " uncompute=";
    if (r.uncompute.empty()) os << "-";
    for (std::size_t i = 0; i < r.uncompute.size(); ++i) {
      os << (i ? ";" : "") << r.uncompute[i].to_string();
    }
    os << " bob=" << format_records(r.bob_records)
       << " measured=" << r.measured.to_string() << " result="
       << (r.result ? (*r.result ? "1" : "0") : "-") << "\n";
  }
  os << "end detected=" << outcome.detected << " site=" << to_string(outcome.site)
     << " answer=" << (outcome.answer ? (*outcome.answer ? "1" : "0") : "-")
     << " rounds=" << outcome.rounds_executed
     << " leaked=" << format_records(outcome.leaked_bits) << "\n";
  return os.str();
}

}  // namespace qppp
