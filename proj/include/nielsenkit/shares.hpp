#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nielsenkit/error.hpp"

namespace nielsenkit {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

inline constexpr std::size_t kDefaultItemCap = std::size_t{1} << 16;

/// The threshold distribution: items a_1..a_m, m = C(n, t-1), where A_j
/// runs over the (t-1)-subsets of {1..n} in lexicographic order and item j
/// goes to participant i exactly when i is not in A_j.
///
/// Any t participants jointly hold every item; for any t-1 participants the
/// item whose A_j is exactly that set is missing.
struct ShareDistribution {
  int n = 0;
  int t = 0;
  std::size_t m = 0;
  std::vector<std::vector<int>> a_sets;  // a_sets[j-1] = A_j, sorted
  std::vector<std::vector<int>> r_sets;  // r_sets[i-1] = item slots of participant i, sorted

  const std::vector<int>& slots_of(int participant) const { return r_sets.at(static_cast<std::size_t>(participant - 1)); }
};

/// Throws InvalidParameter unless 1 <= t <= n, and SizeCapExceeded when
/// C(n, t-1) > item_cap. The result is self-checked (exhaustively for small
/// n, by sampling otherwise).
ShareDistribution build_distribution(int n, int t, std::size_t item_cap = kDefaultItemCap);

/// Throws std::logic_error if an invariant of the distribution fails.
void verify_distribution(const ShareDistribution& dist);

template <typename Payload>
struct SlotItem {
  int slot = 1;  // 1-based item index j
  Payload payload;
};

template <typename Payload>
struct ProvidedShare {
  int participant = 1;
  std::vector<SlotItem<Payload>> items;
};

/// Items of each participant's share, in slot order.
template <typename Payload>
std::vector<std::vector<SlotItem<Payload>>> split_items(const ShareDistribution& dist,
                                                       std::span<const Payload> payloads) {
  if (payloads.size() != dist.m) {
    throw Error(ErrorKind::InvalidParameter, "expected " + std::to_string(dist.m) + " items, got " +
                                                 std::to_string(payloads.size()));
  }
  std::vector<std::vector<SlotItem<Payload>>> out(static_cast<std::size_t>(dist.n));
  for (int i = 1; i <= dist.n; ++i) {
    for (int j : dist.slots_of(i)) {
      out[static_cast<std::size_t>(i - 1)].push_back({j, payloads[static_cast<std::size_t>(j - 1)]});
    }
  }
  return out;
}

/// Union of the provided items. Throws DuplicateParticipant on repeated
/// participants, InvalidParameter on out-of-range indices or conflicting
/// payloads for one slot, and CoverageError listing the uncovered slots.
template <typename Payload>
std::vector<Payload> reconstruct_items(int n, std::size_t m, std::span<const ProvidedShare<Payload>> provided) {
  std::set<int> participants;
  std::vector<const Payload*> slots(m, nullptr);
  for (const auto& share : provided) {
    if (share.participant < 1 || share.participant > n) {
      throw Error(ErrorKind::InvalidParameter, "participant " + std::to_string(share.participant) +
                                                   " is outside 1.." + std::to_string(n));
    }
    if (!participants.insert(share.participant).second) {
      throw Error(ErrorKind::DuplicateParticipant,
                  "participant " + std::to_string(share.participant) + " supplied twice");
    }
    for (const auto& item : share.items) {
      if (item.slot < 1 || static_cast<std::size_t>(item.slot) > m) {
        throw Error(ErrorKind::InvalidParameter, "item slot " + std::to_string(item.slot) +
                                                     " is outside 1.." + std::to_string(m));
      }
      auto& slot = slots[static_cast<std::size_t>(item.slot - 1)];
      if (slot != nullptr && !(*slot == item.payload)) {
        throw Error(ErrorKind::InvalidParameter,
                    "shares disagree on item " + std::to_string(item.slot));
      }
      slot = &item.payload;
    }
  }
  std::vector<int> missing;
  for (std::size_t j = 0; j < m; ++j) {
    if (slots[j] == nullptr) missing.push_back(static_cast<int>(j) + 1);
  }
  if (!missing.empty()) {
    std::string list;
    for (int j : missing) list += (list.empty() ? "" : ",") + std::to_string(j);
    throw CoverageError("shares do not cover item slots " + list, std::move(missing));
  }
  std::vector<Payload> out;
  out.reserve(m);
  for (const Payload* p : slots) out.push_back(*p);
  return out;
}

}  // namespace nielsenkit
