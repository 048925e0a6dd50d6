#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace gerrycircle::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, count) into contiguous chunks, runs `body(begin, end, acc)` on
/// each with its own accumulator, and folds the accumulators with `combine`
/// in chunk order. Each index is processed exactly once regardless of the
/// thread count, so order-independent reductions are schedule independent.
template <class Acc, class Body, class Combine>
Acc parallel_reduce(std::uint64_t count, unsigned threads, const Acc& init, Body body,
                    Combine combine) {
  threads = resolve_threads(threads);
  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
  std::vector<Acc> partial(workers, init);
  if (workers == 1) {
    body(std::uint64_t{0}, count, partial[0]);
    return partial[0];
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end, partial[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc result = init;
  for (auto& p : partial) combine(result, p);
  return result;
}

}  // namespace gerrycircle::detail
