#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace geodef {

/// Fixed-length bit vector with 64-bit word storage.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::uint64_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::uint64_t size() const { return n_; }
  bool test(std::uint64_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint64_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(std::uint64_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  void assign(std::uint64_t i, bool v) { v ? set(i) : reset(i); }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }
  std::vector<std::uint64_t>& words() { return w_; }

  bool operator==(const Bitset&) const = default;

private:
  std::uint64_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Runs fn(i) for i in [0, n) split over evenly sized chunks of worker
/// threads. fn must be safe to run concurrently for distinct i; results
/// must be written to per-index slots so the outcome is deterministic.
inline void parallel_for(std::uint64_t n, unsigned threads,
                         const std::function<void(std::uint64_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned t = std::min<std::uint64_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    std::uint64_t lo = n * w / t;
    std::uint64_t hi = n * (w + 1) / t;
    pool.emplace_back([lo, hi, &fn] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline unsigned default_threads() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace geodef
