#ifndef QCM_PARALLEL_H_
#define QCM_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace qcm {

// Calls body(i) for every i in [0, count) on up to `jobs` threads. Bodies
// must write only to their own slots.
template <typename Body>
void ParallelFor(int64_t count, int jobs, Body body) {
  jobs = static_cast<int>(std::max<int64_t>(1, std::min<int64_t>(jobs, count)));
  if (jobs == 1) {
    for (int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> workers;
  for (int j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (int64_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

inline int DefaultJobs() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace qcm

#endif  // QCM_PARALLEL_H_
