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

#pragma once

// Umbrella header for in-process callers. The in-memory entry points are
// pdq::evaluate (metric.hpp) and pdq::run_pipeline (postprocess.hpp); no
// file round-trip is needed.

#include "pdq/cli.hpp"
#include "pdq/error.hpp"
#include "pdq/heatmap.hpp"
#include "pdq/io.hpp"
#include "pdq/metric.hpp"
#include "pdq/model.hpp"
#include "pdq/postprocess.hpp"
#include "pdq/sweep.hpp"
#include "pdq/synth.hpp"

namespace pdq {

/// Engine version; wrappers report the same string.
inline const char* version() { return kVersion; }

}  // namespace pdq
