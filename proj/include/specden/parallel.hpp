#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace specden {

// Runs fn(unit) for unit in [0, n_units) across `threads` workers. Units must
// be independent and write only to their own output slots; combined with
// per-unit derived random streams this makes results identical for any thread
// count (the CLI contract for --threads).
inline void parallel_units(int64_t n_units, int threads,
                           const std::function<void(int64_t)>& fn) {
  if (threads <= 1 || n_units <= 1) {
    for (int64_t u = 0; u < n_units; ++u) fn(u);
    return;
  }
  const int nw = static_cast<int>(std::min<int64_t>(threads, n_units));
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(nw));
  for (int w = 0; w < nw; ++w) {
    workers.emplace_back([&, w]() {
      for (int64_t u = w; u < n_units; u += nw) fn(u);
    });
  }
  for (auto& t : workers) t.join();
}

}  // namespace specden
