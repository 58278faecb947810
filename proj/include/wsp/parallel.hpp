#pragma once

#include <cstddef>
#include <functional>

namespace wsp {

/// Degree of parallelism handed down by the caller. Modules never pick it
/// themselves; the CLI owns the decision.
struct ExecPolicy {
  int workers = 1;

  static ExecPolicy serial() { return ExecPolicy{1}; }
};

/// Reads WSP_WORKERS; falls back to `fallback` when unset or malformed.
int workers_from_env(int fallback);

/// Runs body(i) for i in [0, n). Work items must be independent; the
/// partition only decides who runs what, never what gets computed.
void parallel_for(std::size_t n, const ExecPolicy& exec,
                  const std::function<void(std::size_t)>& body);

/// Range form of parallel_for: body(begin, end) over contiguous chunks.
void parallel_for_range(std::size_t n, const ExecPolicy& exec,
                        const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of term(i) over [0, n) with a reduction tree that depends only on n.
/// Blocks of fixed size are summed left to right and the block partials are
/// combined in block order, so the bits do not change with the worker count.
double deterministic_sum(std::size_t n, const ExecPolicy& exec,
                         const std::function<double(std::size_t)>& term);

inline constexpr std::size_t kReductionBlock = 4096;

}  // namespace wsp
