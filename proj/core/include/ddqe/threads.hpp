#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ddqe {

/// Worker count: min(hardware, DDQE_THREADS); at least 1.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("DDQE_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

/// Map-reduce over index blocks with a static partition. Each worker w
/// processes indices [begin_w, end_w); partials are combined in worker order,
/// so the result depends only on (n, nworkers), not on scheduling.
/// With nworkers == 1 the reduction is strictly serial.
template <typename Partial, typename Body, typename Combine>
Partial parallel_map_reduce(std::size_t n, int nworkers, Partial init, Body body,
                            Combine combine) {
  nworkers = std::max(1, nworkers);
  if (nworkers == 1 || n <= 1) {
    Partial acc = init;
    for (std::size_t i = 0; i < n; ++i) body(i, acc);
    return acc;
  }
  const std::size_t nw = std::min<std::size_t>(nworkers, n);
  std::vector<Partial> partials(nw, init);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t b = n * w / nw;
    const std::size_t e = n * (w + 1) / nw;
    pool.emplace_back([&, w, b, e]() {
      for (std::size_t i = b; i < e; ++i) body(i, partials[w]);
    });
  }
  for (auto& t : pool) t.join();
  Partial acc = init;
  for (std::size_t w = 0; w < nw; ++w) combine(acc, partials[w]);
  return acc;
}

/// Plain parallel for over [0, n) with a static partition.
template <typename Body>
void parallel_for(std::size_t n, int nworkers, Body body) {
  nworkers = std::max(1, nworkers);
  if (nworkers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t nw = std::min<std::size_t>(nworkers, n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    const std::size_t b = n * w / nw;
    const std::size_t e = n * (w + 1) / nw;
    pool.emplace_back([&, b, e]() {
      for (std::size_t i = b; i < e; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ddqe
