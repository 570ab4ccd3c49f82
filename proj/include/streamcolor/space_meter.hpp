#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace streamcolor {

/// Ledger accounts. One word is one stored integer.
enum class Account : std::size_t {
  OfflineStates,   // shifts + degree counters
  ColorGraph,      // transient per-arrival matching memory
  Spill,           // spill-set edge endpoints
  BatchCounters,   // per-online-vertex batch counters
  Buffer,          // buffered edge endpoints (T) and per-vertex counts
  DispatchShifts,  // per-vertex batch/group shifts and counters
  Overflow,        // batches diverted after a bound violation
  Bits,            // bipartization bit words
  BaseStore,       // bipartization residual edges
  OfflineColor,    // working memory of the offline colorers
  Count_
};

inline constexpr std::size_t kAccountCount = static_cast<std::size_t>(Account::Count_);

std::string_view to_string(Account account);

/// Word-count ledger for algorithm-owned memory. Harness memory (parser,
/// verifier, generators) is never charged here.
class SpaceMeter {
 public:
  void charge(Account account, std::uint64_t words);
  void release(Account account, std::uint64_t words);

  std::uint64_t current() const { return current_; }
  std::uint64_t peak() const { return peak_; }
  std::uint64_t balance(Account account) const {
    return ledger_[static_cast<std::size_t>(account)];
  }
  const std::array<std::uint64_t, kAccountCount>& ledger() const { return ledger_; }

  /// Ledger entries sum to current().
  bool consistent() const;

 private:
  std::array<std::uint64_t, kAccountCount> ledger_{};
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
};

/// Charges on construction and releases the same amount on destruction.
class ScopedCharge {
 public:
  ScopedCharge(SpaceMeter& meter, Account account, std::uint64_t words)
      : meter_(meter), account_(account), words_(words) {
    meter_.charge(account_, words_);
  }
  ~ScopedCharge() { meter_.release(account_, words_); }
  ScopedCharge(const ScopedCharge&) = delete;
  ScopedCharge& operator=(const ScopedCharge&) = delete;

 private:
  SpaceMeter& meter_;
  Account account_;
  std::uint64_t words_;
};

}  // namespace streamcolor
