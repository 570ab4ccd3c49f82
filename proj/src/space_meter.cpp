#include "streamcolor/space_meter.hpp"

#include <numeric>
#include <string>

#include "streamcolor/error.hpp"

namespace streamcolor {

std::string_view to_string(Account account) {
  switch (account) {
    case Account::OfflineStates: return "offline-states";
    case Account::ColorGraph: return "color-graph";
    case Account::Spill: return "spill";
    case Account::BatchCounters: return "batch-counters";
    case Account::Buffer: return "buffer";
    case Account::DispatchShifts: return "dispatch-shifts";
    case Account::Overflow: return "overflow";
    case Account::Bits: return "bipartization-bits";
    case Account::BaseStore: return "base-store";
    case Account::OfflineColor: return "offline-color";
    case Account::Count_: break;
  }
  return "unknown";
}

void SpaceMeter::charge(Account account, std::uint64_t words) {
  ledger_[static_cast<std::size_t>(account)] += words;
  current_ += words;
  if (current_ > peak_) peak_ = current_;
}

void SpaceMeter::release(Account account, std::uint64_t words) {
  auto& slot = ledger_[static_cast<std::size_t>(account)];
  if (words > slot)
    fail(ErrorCode::InvalidArgument,
         "release of " + std::to_string(words) + " words exceeds " + std::string(to_string(account)));
  slot -= words;
  current_ -= words;
}

bool SpaceMeter::consistent() const {
  return std::accumulate(ledger_.begin(), ledger_.end(), std::uint64_t{0}) == current_ &&
         peak_ >= current_;
}

}  // namespace streamcolor
