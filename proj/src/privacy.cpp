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

#include "qppp/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace qppp {

namespace {

void check_nk(int n, int n2, int k) {
  if (n < 1 || k < 1 || n2 < 1 || n2 > n) {
    throw std::invalid_argument("privacy: need n >= 1, k >= 1, 1 <= n2 <= n");
  }
}

}  // namespace

double privacy_amount_uniform(double delta, double confidence_percent) {
  if (delta < 0.0) throw std::invalid_argument("privacy: delta < 0");
  if (!(confidence_percent > 0.0 && confidence_percent <= 100.0)) {
    throw std::invalid_argument("privacy: confidence must be in (0, 100]");
  }
  return 2.0 * confidence_percent * delta / 100.0;
}

PrivacyReport uniform_privacy_report(double delta, double confidence_percent) {
  return {privacy_amount_uniform(delta, confidence_percent), confidence_percent,
          "uniform"};
}

std::string_view to_string(AttackScope scope) {
  return scope == AttackScope::kAttribute ? "attribute" : "example";
}

AttackScope parse_attack_scope(std::string_view text) {
  if (text == "attribute") return AttackScope::kAttribute;
  if (text == "example") return AttackScope::kExample;
  throw std::invalid_argument("scope must be 'attribute' or 'example', got '" +
                              std::string(text) + "'");
}

double detection_probability(int n, int n2, int k, AttackScope scope) {
  check_nk(n, n2, k);
  const double measured =
      scope == AttackScope::kAttribute ? n2 - 1.0 : n2 * k - 1.0;
  return measured / (2.0 * n * k);
}

double expected_leak_count(int n, int n2, int k) {
  check_nk(n, n2, k);
  if (n2 * k == 1) {
    throw std::domain_error("expected_leak_count: the attack is undetectable "
                            "when n2 k = 1");
  }
  return 2.0 * n / n2 + 2.0 * n / (n2 * (n2 * k - 1.0)) - 1.0;
}

double privacy_level(int n1, int n2) { return std::ldexp(1.0, n1 - n2); }

BobStrategy reduction_attack(const RegisterLayout& layout, int n2,
                             AttackScope scope, int attribute) {
  const int n = layout.bits_per_attribute;
  const int k = layout.attributes;
  check_nk(n, n2, k);
  std::vector<int> qubits;
  if (scope == AttackScope::kAttribute) {
    if (attribute < 0 || attribute >= k) {
      throw std::out_of_range("reduction_attack: attribute out of range");
    }
    for (int b = 0; b < n2 - 1; ++b) {
      qubits.push_back(layout.attribute_qubit(attribute) + b);
    }
  } else {
    for (int j = 0; j < k; ++j) {
      for (int b = 0; b < n2; ++b) qubits.push_back(layout.attribute_qubit(j) + b);
    }
    qubits.pop_back();
  }
  if (qubits.empty()) return BobStrategy::honest();
  return BobStrategy::measure_subset(std::move(qubits));
}

}  // namespace qppp
