#pragma once

#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace zsum::detail {

// Runs work(0), ..., work(count-1) on up to `jobs` threads. Worker w takes
// the chunks with index congruent to w, so the partition is static. Callers
// write results into per-chunk slots and merge in chunk order, which makes
// the merged output independent of the job count and of thread scheduling.
template <typename Fn>
inline void run_chunks(int count, int jobs, Fn&& work) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  int workers = jobs < count ? jobs : count;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&work, &errors, w, count, workers] {
      try {
        for (int i = w; i < count; i += workers) work(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace zsum::detail
