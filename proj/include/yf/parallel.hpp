#pragma once

#include <cstddef>
#include <functional>

namespace yf {

// Runs body(i) for every i in [0, n).  With threads <= 1 the loop is serial.
// Workers pull indices from a shared counter; body must write its result into
// a caller-owned slot i, so aggregate output is independent of scheduling.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace yf
