#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>

namespace vted {

/// Caps for exact searches that may blow up: a node-expansion count and a
/// wall-clock limit, whichever trips first.
struct SearchLimits {
  std::uint64_t max_expansions = 10'000'000;
  double max_seconds = 60.0;

  static SearchLimits unlimited() {
    return {std::numeric_limits<std::uint64_t>::max(),
            std::numeric_limits<double>::infinity()};
  }
};

/// Shared, thread-safe budget accounting for one logical computation.
class BudgetState {
 public:
  explicit BudgetState(const SearchLimits& limits)
      : BudgetState(limits, deadline_from_now(limits.max_seconds)) {}

  /// Shares an externally fixed deadline (e.g. one wall clock over many
  /// per-cell expansion budgets).
  BudgetState(const SearchLimits& limits,
              std::chrono::steady_clock::time_point deadline)
      : cap_(limits.max_expansions), deadline_(deadline) {}

  static std::chrono::steady_clock::time_point deadline_from_now(
      double seconds) {
    return std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(seconds >= 1e9 ? 1e9 : seconds));
  }

  /// Counts one expansion; returns false once the budget is exhausted.
  /// The wall clock is polled every 1024 expansions.
  bool tick() {
    if (exhausted_.load(std::memory_order_relaxed)) return false;
    std::uint64_t used = used_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (used > cap_) {
      exhausted_.store(true, std::memory_order_relaxed);
      return false;
    }
    if ((used & 1023) == 0 && std::chrono::steady_clock::now() >= deadline_) {
      exhausted_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  /// Immediate wall-clock check, for call sites that do substantial work
  /// between ticks (e.g. one whole substitution per iteration).
  bool check_deadline() {
    if (exhausted_.load(std::memory_order_relaxed)) return false;
    if (std::chrono::steady_clock::now() >= deadline_) {
      exhausted_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  bool exhausted() const { return exhausted_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> used_{0};
  std::uint64_t cap_;
  std::chrono::steady_clock::time_point deadline_;
  std::atomic<bool> exhausted_{false};
};

}  // namespace vted
