#include "nielsenkit/shares.hpp"

#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nielsenkit {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // result * num / i stays exact because result * num is C(n-k+i, i) * i.
    if (result > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

namespace {

// Next k-subset of {1..n} in lexicographic order; false after the last one.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int pos = k - 1;
  while (pos >= 0 && c[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
  if (pos < 0) return false;
  ++c[static_cast<std::size_t>(pos)];
  for (int q = pos + 1; q < k; ++q) c[static_cast<std::size_t>(q)] = c[static_cast<std::size_t>(q - 1)] + 1;
  return true;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 1);
  return c;
}

// Slots missing from the union of the given participants' shares.
std::vector<int> uncovered(const ShareDistribution& dist, std::span<const int> participants) {
  std::vector<char> seen(dist.m, 0);
  for (int i : participants) {
    for (int j : dist.slots_of(i)) seen[static_cast<std::size_t>(j - 1)] = 1;
  }
  std::vector<int> missing;
  for (std::size_t j = 0; j < dist.m; ++j) {
    if (!seen[j]) missing.push_back(static_cast<int>(j) + 1);
  }
  return missing;
}

void check_subset(const ShareDistribution& dist, std::span<const int> group) {
  const auto missing = uncovered(dist, group);
  if (static_cast<int>(group.size()) >= dist.t) {
    if (!missing.empty()) throw std::logic_error("distribution: a t-subset misses an item");
  } else if (static_cast<int>(group.size()) == dist.t - 1) {
    // Exactly the item whose A_j is this group must be missing.
    if (missing.size() != 1 ||
        !std::ranges::equal(dist.a_sets[static_cast<std::size_t>(missing.front() - 1)], group)) {
      throw std::logic_error("distribution: a (t-1)-subset does not miss exactly its own item");
    }
  }
}

constexpr std::uint64_t kExhaustiveLimit = 4096;
constexpr int kSamples = 256;

}  // namespace

void verify_distribution(const ShareDistribution& dist) {
  const std::size_t holders = static_cast<std::size_t>(dist.n - (dist.t - 1));
  std::vector<std::size_t> count(dist.m, 0);
  for (int i = 1; i <= dist.n; ++i) {
    const auto& slots = dist.slots_of(i);
    if (slots.size() != binomial(dist.n - 1, dist.t - 1)) {
      throw std::logic_error("distribution: share size differs from C(n-1, t-1)");
    }
    for (int j : slots) {
      const auto& a = dist.a_sets[static_cast<std::size_t>(j - 1)];
      if (std::ranges::binary_search(a, i)) throw std::logic_error("distribution: item given to a member of A_j");
      ++count[static_cast<std::size_t>(j - 1)];
    }
  }
  for (std::size_t c : count) {
    if (c != holders) throw std::logic_error("distribution: item not held by exactly n-(t-1) participants");
  }

  if (binomial(dist.n, dist.t) + binomial(dist.n, dist.t - 1) <= kExhaustiveLimit) {
    for (int k : {dist.t, dist.t - 1}) {
      if (k < 1) continue;
      auto group = first_combination(k);
      do {
        check_subset(dist, group);
      } while (next_combination(group, dist.n));
    }
    return;
  }
  std::mt19937_64 rng(0x5eed);
  std::vector<int> everyone(static_cast<std::size_t>(dist.n));
  std::iota(everyone.begin(), everyone.end(), 1);
  for (int s = 0; s < kSamples; ++s) {
    std::shuffle(everyone.begin(), everyone.end(), rng);
    for (int k : {dist.t, dist.t - 1}) {
      if (k < 1) continue;
      std::vector<int> group(everyone.begin(), everyone.begin() + k);
      std::ranges::sort(group);
      check_subset(dist, group);
    }
  }
}

ShareDistribution build_distribution(int n, int t, std::size_t item_cap) {
  if (n < 1 || t < 1 || t > n) {
    throw Error(ErrorKind::InvalidParameter,
                "need 1 <= t <= n, got n=" + std::to_string(n) + ", t=" + std::to_string(t));
  }
  const std::uint64_t m = binomial(n, t - 1);
  if (m > item_cap) {
    throw Error(ErrorKind::SizeCapExceeded, "C(" + std::to_string(n) + ", " + std::to_string(t - 1) +
                                                ") exceeds the item cap " + std::to_string(item_cap));
  }
  ShareDistribution dist;
  dist.n = n;
  dist.t = t;
  dist.m = static_cast<std::size_t>(m);
  dist.a_sets.reserve(dist.m);
  auto subset = first_combination(t - 1);
  do {
    dist.a_sets.push_back(subset);
  } while (next_combination(subset, n));

  dist.r_sets.resize(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < dist.m; ++j) {
    const auto& a = dist.a_sets[j];
    for (int i = 1; i <= n; ++i) {
      if (!std::ranges::binary_search(a, i)) dist.r_sets[static_cast<std::size_t>(i - 1)].push_back(static_cast<int>(j) + 1);
    }
  }
  verify_distribution(dist);
  return dist;
}

}  // namespace nielsenkit
