#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace opetope {

/// Worker count from OPETOPE_THREADS (default: hardware concurrency, at
/// least 1).
std::size_t workerCount();

/// Runs fn(0..n-1) on up to workerCount() threads and returns the results
/// in index order, so the output never depends on scheduling. The first
/// exception (by index) is rethrown.
template <class T>
std::vector<T> parallelMap(std::size_t n, const std::function<T(std::size_t)>& fn);

namespace detail {
void runIndexed(std::size_t n, const std::function<void(std::size_t)>& fn);
}

template <class T>
std::vector<T> parallelMap(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  detail::runIndexed(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace opetope
