#include "wsp/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace wsp {

int workers_from_env(int fallback) {
  const char* raw = std::getenv("WSP_WORKERS");
  if (raw == nullptr) return fallback;
  try {
    const int value = std::stoi(raw);
    return value >= 1 ? value : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

void parallel_for_range(std::size_t n, const ExecPolicy& exec,
                        const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(exec.workers, 1)), n);
  if (workers == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const ExecPolicy& exec,
                  const std::function<void(std::size_t)>& body) {
  parallel_for_range(n, exec, [&body](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) body(i);
  });
}

double deterministic_sum(std::size_t n, const ExecPolicy& exec,
                         const std::function<double(std::size_t)>& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, exec, [&](std::size_t b) {
    const std::size_t begin = b * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partial[b] = s;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace wsp
