#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace wlab::parallel {

void set_thread_count(int n);
int thread_count();

// Calls body(i) once for every i in [0, n). Nested calls made from inside a
// body run serially on the calling worker.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T>
struct Kahan {
  T sum;
  T carry;
  explicit Kahan(const T& zero) : sum(zero), carry(zero) {}
  void add(const T& v) {
    T y = v - carry;
    T t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline constexpr std::size_t kReductionBlock = 128;

template <class T>
T pairwise_sum(std::vector<T>& parts) {
  std::size_t n = parts.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < n / 2; ++i) parts[i] = parts[2 * i] + parts[2 * i + 1];
    if (n % 2 == 1) parts[n / 2] = parts[n - 1];
    n = half;
  }
  return parts.front();
}

// Sum of term(i) over [0, n). The index range is cut into fixed blocks, each
// block is Kahan-summed in index order and the block totals are combined by a
// fixed pairwise tree, so the result does not depend on the thread count.
template <class T, class F>
T deterministic_sum(std::size_t n, const T& zero, F&& term) {
  if (n == 0) return zero;
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> parts(blocks, zero);
  for_each_index(blocks, [&](std::size_t b) {
    Kahan<T> acc(zero);
    const std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) acc.add(term(i));
    parts[b] = acc.sum;
  });
  return pairwise_sum(parts);
}

}  // namespace wlab::parallel
