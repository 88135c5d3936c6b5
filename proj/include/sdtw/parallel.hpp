#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

namespace sdtw {

/// Applies `fn` to every element, possibly on several threads. Results keep input order; the
/// exception of the lowest failing index is rethrown after all workers finish.
template <class T, class Fn>
auto parallel_map(std::span<const T> items, Fn&& fn) {
  using R = std::decay_t<std::invoke_result_t<Fn&, const T&>>;
  const std::size_t n = items.size();
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Fn&& fn) {
  return parallel_map(std::span<const T>(items), std::forward<Fn>(fn));
}

}  // namespace sdtw
