// Copyright 2026 The genalpha Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal fork-join helpers. The worker count comes from the GENALPHA_THREADS
// environment variable (default: hardware concurrency).

#include <functional>

namespace genalpha {

/// Number of worker threads; at least 1.
int thread_count();
/// Override the worker count for this process (0 restores the default).
void set_thread_count(int n);

/// Calls body(i) for i in [0, n). Iterations run on up to thread_count()
/// threads in contiguous chunks; small ranges run inline.
void parallel_for(int n, const std::function<void(int)>& body, int grain = 2048);

}  // namespace genalpha
