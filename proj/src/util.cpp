#include "drkofn/util.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace drkofn {

int thread_count() {
  if (const char* env = std::getenv("DRKOFN_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 512) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t count, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  std::size_t chunks = (count + chunk_size - 1) / chunk_size;

  auto run = [&](std::size_t c) {
    std::size_t begin = c * chunk_size;
    std::size_t end = begin + chunk_size < count ? begin + chunk_size : count;
    body(c, begin, end);
  };

  std::size_t workers = static_cast<std::size_t>(thread_count());
  if (workers > chunks) workers = chunks;
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t c = next.fetch_add(1);
        if (c >= chunks) return;
        run(c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace drkofn
