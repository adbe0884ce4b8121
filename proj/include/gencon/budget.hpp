#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gencon {

// Thrown when an exhaustive search runs out of node expansions or time.
// Signals "instance too large for desk scale", never nonexistence.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SearchBudget {
 public:
  static constexpr std::uint64_t kDefaultPackNodes = 100'000'000;
  static constexpr std::uint64_t kDefaultBundleNodes = 10'000'000;

  explicit SearchBudget(std::uint64_t max_nodes = kDefaultPackNodes,
                        std::optional<std::chrono::seconds> timeout = std::nullopt)
      : max_nodes_(max_nodes) {
    if (timeout) deadline_ = std::chrono::steady_clock::now() + *timeout;
  }

  void charge(const char* what) {
    if (++used_ > max_nodes_) {
      throw BudgetExceeded(std::string(what) + ": node budget of " + std::to_string(max_nodes_) +
                           " exhausted");
    }
    if (deadline_ && (used_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      throw BudgetExceeded(std::string(what) + ": time limit reached");
    }
  }

  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t limit() const noexcept { return max_nodes_; }

 private:
  std::uint64_t max_nodes_;
  std::uint64_t used_ = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace gencon
