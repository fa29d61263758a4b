#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace spacing {

/// Worker count for horizon scans. 0 means "one per hardware thread".
struct ScanOptions {
  unsigned jobs = 1;
  std::uint64_t chunk = 4096;

  unsigned workers() const
  {
    if (jobs != 0)
      return jobs;
    return std::max(1U, std::thread::hardware_concurrency());
  }
};

namespace detail {

// Hands out [lo, hi] in ascending chunks to `workers` threads. `body(chunk_lo, chunk_hi, chunk_index)`
// returns false to stop the calling worker. Exceptions are rethrown on the calling thread.
template <typename Body>
void for_each_chunk(std::uint64_t lo, std::uint64_t hi, const ScanOptions& options, Body&& body)
{
  if (lo > hi)
    return;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk);
  const std::uint64_t chunks = (hi - lo) / chunk + 1;
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(options.workers(), chunks));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    try {
      for (;;) {
        const std::uint64_t index = next.fetch_add(1);
        if (index >= chunks)
          return;
        const std::uint64_t a = lo + index * chunk;
        const std::uint64_t b = std::min(hi, a + (chunk - 1));
        if (!body(a, b, index))
          return;
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error)
        error = std::current_exception();
      next.store(chunks);
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run);
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace detail

/// Smallest n in [lo, hi] with pred(n), independent of the worker count.
template <typename Pred>
std::optional<std::uint64_t> first_hit(std::uint64_t lo, std::uint64_t hi, Pred&& pred, const ScanOptions& options = {})
{
  constexpr auto none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};
  detail::for_each_chunk(lo, hi, options, [&](std::uint64_t a, std::uint64_t b, std::uint64_t) {
    // Chunks are claimed in ascending order, so once one starts past the best hit nothing later can win.
    if (a > best.load())
      return false;
    for (std::uint64_t n = a; n <= b; ++n) {
      if (n > best.load())
        return true;
      if (pred(n)) {
        std::uint64_t current = best.load();
        while (n < current && !best.compare_exchange_weak(current, n)) {
        }
        return true;
      }
    }
    return true;
  });
  if (best.load() == none)
    return std::nullopt;
  return best.load();
}

/// Every n in [lo, hi] with pred(n), ascending.
template <typename Pred>
std::vector<std::uint64_t> collect_hits(std::uint64_t lo, std::uint64_t hi, Pred&& pred, const ScanOptions& options = {})
{
  if (lo > hi)
    return {};
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk);
  std::vector<std::vector<std::uint64_t>> parts((hi - lo) / chunk + 1);
  detail::for_each_chunk(lo, hi, options, [&](std::uint64_t a, std::uint64_t b, std::uint64_t index) {
    auto& part = parts[index];
    for (std::uint64_t n = a; n <= b; ++n)
      if (pred(n))
        part.push_back(n);
    return true;
  });
  std::vector<std::uint64_t> out;
  for (auto& part : parts)
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

} // namespace spacing
