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

// Small parsing and formatting helpers shared by the option-string parsers.

#ifndef QPPP_TEXT_HPP_
#define QPPP_TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qppp {

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

/// Whole-string integer parse; throws std::invalid_argument.
long long parse_int(std::string_view s);
std::uint64_t parse_uint(std::string_view s);
/// Decimal or a ratio "a/b" (so "1/1024" is accepted).
double parse_real(std::string_view s);
bool parse_bool(std::string_view s);

/// Shortest "%.12g" style rendering used for every CSV number.
std::string format_number(double v);
/// Exact rendering for values that must round-trip ("%.17g").
std::string format_exact(double v);

}  // namespace qppp

#endif  // QPPP_TEXT_HPP_
