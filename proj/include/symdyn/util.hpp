#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace symdyn {

std::string sha256_hex(std::string_view data);

// Worker count for parallel loops: set_thread_count wins, then the
// SYMDYN_THREADS environment variable, then the hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);  // 0 restores the default

// Runs body(i) for i in [0, n) on up to thread_count() threads. Callers write
// results into slot i so the merged output does not depend on scheduling.
// The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symdyn
