#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rwre {

// Applies fn to every trial index in [0, n) and returns the results in index
// order. Work splits into contiguous blocks over distinct threads; fn must be
// a pure function of the index, which makes the output independent of the
// worker count.
template <typename Fn>
auto parallel_map(std::uint64_t n, int workers, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{0}))> {
  using R = decltype(fn(std::uint64_t{0}));
  std::vector<R> out(n);
  if (workers <= 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::uint64_t nw = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(nw);
  for (std::uint64_t w = 0; w < nw; ++w) {
    const std::uint64_t lo = n * w / nw;
    const std::uint64_t hi = n * (w + 1) / nw;
    threads.emplace_back([&, lo, hi, w] {
      try {
        for (std::uint64_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace rwre
