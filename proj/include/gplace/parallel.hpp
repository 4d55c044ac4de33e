// Copyright 2026 The gramian-place Authors
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

#ifndef GPLACE_PARALLEL_HPP_
#define GPLACE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace gplace {

// Worker cap: GRAMIAN_PLACE_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
std::size_t WorkerCount();

// Runs body(i) for i in [0, count). Each index is handled exactly once;
// callers write results into per-index slots so the outcome does not depend
// on scheduling. Nested calls run serially on the calling worker. If any
// body throws, the exception from the smallest failing index is rethrown.
void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& body);

}  // namespace gplace

#endif  // GPLACE_PARALLEL_HPP_
