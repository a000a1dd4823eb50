#pragma once

#include <cstddef>
#include <functional>

namespace vmdtex::util {

/// Number of workers to use for `requested` (0 = hardware concurrency, at least 1).
std::size_t resolve_jobs(std::size_t requested);

/// Runs body(i) for i in [0, count) on up to `jobs` threads.
///
/// Each index runs exactly once. If any invocation throws, the exception of the
/// lowest failing index is rethrown after all workers stop, so failures are
/// reported the same way regardless of pool size.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace vmdtex::util
