// Copyright 2026 The negcurve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NEGCURVE_RANDOM_HPP_
#define NEGCURVE_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>

namespace negcurve {

// splitmix64 finalizer applied to master + golden * (index + 1). Used to give
// every chunk of a parallel job its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Worker count: `requested` if positive, else hardware concurrency; in both
// cases capped by the NEGCURVE_THREADS environment variable when set.
int worker_count(int requested = 0);

// Runs task(0) ... task(tasks - 1) on up to `threads` workers. Tasks must be
// independent; results are expected to be written to per-task slots.
void parallel_for(std::size_t tasks, int threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace negcurve

#endif  // NEGCURVE_RANDOM_HPP_
