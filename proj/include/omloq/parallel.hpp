#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace omloq {

// Serial is the reference path; parallel must return identical results.
enum class Exec { serial, parallel };

// Smallest i in [0, count) with ok(i) == false, or nullopt when every index
// passes. `ok` must not throw.
template <class Pred>
std::optional<std::uint64_t> first_failure(std::uint64_t count, Pred&& ok,
                                           Exec exec = Exec::parallel) {
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!ok(i)) return i;
    }
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{count};
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t s = 0; s < n; ++s) {
    const auto i = static_cast<std::uint64_t>(s);
    // indices above a known failure cannot change the minimum
    if (i > best.load(std::memory_order_relaxed)) continue;
    if (!ok(i)) {
      std::uint64_t cur = best.load(std::memory_order_relaxed);
      while (i < cur &&
             !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
      }
    }
  }
  const std::uint64_t b = best.load();
  if (b == count) return std::nullopt;
  return b;
}

// Runs body(i) for every i in [0, count). Iterations must be independent.
template <class Body>
void for_each_index(std::uint64_t count, Body&& body,
                    Exec exec = Exec::parallel) {
  if (exec == Exec::serial) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 0; s < n; ++s) body(static_cast<std::uint64_t>(s));
}

inline int worker_count() {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace omloq
