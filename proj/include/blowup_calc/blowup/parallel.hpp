#pragma once

#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace blowup_calc {

// BLOWUP_CALC_THREADS caps worker threads; 0 means run inline. Unset means
// hardware concurrency.
inline std::size_t thread_cap() {
  const char* s = std::getenv("BLOWUP_CALC_THREADS");
  if (!s || !*s) return std::thread::hardware_concurrency();
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 0) return 0;
  return static_cast<std::size_t>(v);
}

// f(0), ..., f(n-1) with results in index order; the first exception by index wins
template <class F>
auto parallel_map(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using T = decltype(f(std::size_t{}));
  std::vector<T> out;
  out.reserve(n);
  std::size_t workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
    return out;
  }
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errs(n);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) {
        try {
          slots[i].emplace(f(i));
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < n; ++i) {
    if (errs[i]) std::rethrow_exception(errs[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace blowup_calc
