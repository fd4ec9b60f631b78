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

// Closed-form privacy numbers and the measurement attacks they describe.
//
// An attacker who wants to narrow an n-bit attribute from 2^n1 to 2^(n1-n2)
// candidate intervals must read n2 leading bits. One of them already follows
// from the classifier's answer, so n2 - 1 qubits are measured per attribute
// (or n2*k - 1 per example). Each measured qubit that coincides with Alice's
// hidden position m randomizes both test answers, which then disagree half
// the time.

#ifndef QPPP_PRIVACY_HPP_
#define QPPP_PRIVACY_HPP_

#include <string>
#include <string_view>

#include "qppp/protocol.hpp"

namespace qppp {

/// Interval length l such that x is in [a, a + l] with c% confidence, for
/// uniform noise on [-delta, delta]: l = 2 c delta / 100.
double privacy_amount_uniform(double delta, double confidence_percent);

struct PrivacyReport {
  double amount = 0.0;
  double confidence = 95.0;
  std::string method;
};

PrivacyReport uniform_privacy_report(double delta, double confidence_percent);

enum class AttackScope { kAttribute, kExample };

std::string_view to_string(AttackScope scope);
AttackScope parse_attack_scope(std::string_view text);

/// Per-run detection probability of the matching reduction attack.
/// Attribute scope: (n2 - 1) / (2nk). Example scope: (n2 k - 1) / (2nk).
double detection_probability(int n, int n2, int k, AttackScope scope);

/// Expected number of examples leaked before the first detection under the
/// example-scope attack: 2n/n2 + 2n/(n2 (n2 k - 1)) - 1, which equals
/// (1 - p) / p for p = detection_probability(n, n2, k, kExample).
double expected_leak_count(int n, int n2, int k);

/// Number of candidate intervals left per attribute, 2^(n1 - n2).
double privacy_level(int n1, int n2);

/// The measurement attack behind detection_probability: the top n2 - 1 bits
/// of `attribute`, or the top n2 bits of every attribute minus the last of
/// them. Returns the honest strategy when the set would be empty.
BobStrategy reduction_attack(const RegisterLayout& layout, int n2,
                             AttackScope scope, int attribute = 0);

}  // namespace qppp

#endif  // QPPP_PRIVACY_HPP_
