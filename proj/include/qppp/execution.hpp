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

#ifndef QPPP_EXECUTION_HPP_
#define QPPP_EXECUTION_HPP_

namespace qppp {

/// Selects the OpenMP kernel or its plain-loop reference. Both produce
/// bit-identical results.
enum class Execution { kSerial, kParallel };

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
int worker_threads();

}  // namespace qppp

#endif  // QPPP_EXECUTION_HPP_
