#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace zetafam {

/// Hardware concurrency with a floor of one.
inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// out[i] = fn(i) for i < n on up to `jobs` threads.  Output order is by index,
/// so results do not depend on scheduling.  fn must not throw.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, Fn fn) {
  std::vector<R> out(n);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
    });
  for (auto& w : workers) w.join();
  return out;
}

}  // namespace zetafam
