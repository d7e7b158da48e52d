// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rmsv {

/// Evaluates trial functions on a fixed number of threads. Results come back
/// indexed by trial, so reductions over them do not depend on scheduling.
class Executor {
 public:
  explicit Executor(std::size_t workers = 1) : workers_(workers) {
    if (workers_ == 0) throw std::invalid_argument("Executor: workers must be positive");
  }

  std::size_t workers() const noexcept { return workers_; }

  /// out[i] = fn(i) for i < count. The exception thrown by the lowest failing
  /// index is rethrown after all workers stop.
  template <typename Fn>
  auto map_trials(std::size_t count, Fn&& fn) const -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    auto work = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          slots[i].emplace(fn(i));
        } catch (...) {
          errors[i] = std::current_exception();
          failed.store(true);
        }
      }
    };

    const std::size_t threads = std::min(workers_, count);
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }

    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    std::vector<Result> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
  }

 private:
  std::size_t workers_;
};

}  // namespace rmsv
