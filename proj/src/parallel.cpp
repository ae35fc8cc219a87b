// Copyright 2026 The pdq-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pdq/parallel.hpp"

#include <cstdlib>
#include <string>

#include "pdq/error.hpp"

namespace pdq {

unsigned resolve_thread_count(std::optional<unsigned> requested) {
  unsigned n = 1;
  if (requested) {
    n = *requested;
  } else if (const char* env = std::getenv(kThreadsEnvVar); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') {
      throw InputError(std::string(kThreadsEnvVar) + " must be a non-negative integer");
    }
    n = static_cast<unsigned>(v);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace pdq
