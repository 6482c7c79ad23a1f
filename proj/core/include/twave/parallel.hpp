#pragma once

#include <cstddef>
#include <functional>

namespace twave {

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware concurrency).
// Each index is processed exactly once; exceptions are rethrown after all workers join.
void parallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

} // namespace twave
