#pragma once

#include <cstddef>
#include <functional>

namespace dcov {

/// 0 means "use hardware concurrency".
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs body(i) for i in [0, count) over contiguous static blocks. The first
/// exception thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace dcov
