#pragma once

#include <cstddef>
#include <functional>

namespace drkofn {

// Compensated accumulator for long sums of small probabilities.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

// Worker count: DRKOFN_THREADS if set and positive, else hardware concurrency.
int thread_count();

// Splits [0, count) into fixed-size chunks and runs body(chunk_index, begin, end),
// possibly on several threads.  Chunk boundaries depend only on count and
// chunk_size, never on the worker count, so callers can combine per-chunk
// results in chunk order and get bit-identical totals at any thread setting.
void parallel_chunks(std::size_t count, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace drkofn
