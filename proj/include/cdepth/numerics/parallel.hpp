// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace cdepth {

// Worker count: set_thread_count override if nonzero, else
// CENTRAL_DEPTH_THREADS if set and nonzero, else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

// Calls body(i) for i in [0, n). Each index is handled exactly once, so
// callers writing results by index get thread-count independent output.
// The first exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cdepth
