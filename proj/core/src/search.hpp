#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace ftp::detail {

// C(n, r), saturating at uint64 max.
inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (int i = 1; i <= r; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    if (out > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    out = out * num / i;
  }
  return out;
}

// The `rank`-th r-subset of {0..n-1} in lexicographic order.
inline std::vector<int> unrank_combination(int n, int r, std::uint64_t rank) {
  std::vector<int> out;
  out.reserve(r);
  int next = 0;
  for (int pos = 0; pos < r; ++pos) {
    for (int c = next;; ++c) {
      const std::uint64_t below = binomial(n - c - 1, r - pos - 1);
      if (rank < below) {
        out.push_back(c);
        next = c + 1;
        break;
      }
      rank -= below;
    }
  }
  return out;
}

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Evaluates fn(0), fn(1), ... and returns the hit with the smallest index,
// exactly as a sequential scan would, spreading the work over `threads`
// workers. An exception escapes only if a sequential scan would reach it.
template <class T, class Fn>
std::optional<T> first_hit(std::uint64_t count, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) {
      if (auto r = fn(i)) return r;
    }
    return std::nullopt;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> limit{count};
  std::mutex mutex;
  std::optional<T> best;
  std::uint64_t best_index = count;
  std::exception_ptr error;
  std::uint64_t error_index = count;

  auto lower_limit = [&](std::uint64_t i) {
    std::uint64_t cur = limit.load();
    while (i < cur && !limit.compare_exchange_weak(cur, i)) {
    }
  };

  auto worker = [&] {
    while (true) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= limit.load()) return;
      try {
        auto r = fn(i);
        if (!r) continue;
        std::lock_guard lock(mutex);
        if (i < best_index) {
          best_index = i;
          best = std::move(r);
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
      lower_limit(i);
    }
  };

  const auto workers = static_cast<int>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (error && error_index < best_index) std::rethrow_exception(error);
  return best;
}

}  // namespace ftp::detail
