#include <doctest.h>

#include <algorithm>

#include "nielsenkit/error.hpp"
#include "nielsenkit/shares.hpp"

using namespace nielsenkit;

namespace {

// Every k-subset of {1..n}, lexicographic.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = from; x <= n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<ProvidedShare<int>> provide(const ShareDistribution& d, const std::vector<int>& who) {
  std::vector<int> payloads(d.m);
  for (std::size_t j = 0; j < d.m; ++j) payloads[j] = static_cast<int>(j) * 10 + 7;
  const auto split = split_items<int>(d, payloads);
  std::vector<ProvidedShare<int>> out;
  for (int i : who) out.push_back({i, split[static_cast<std::size_t>(i - 1)]});
  return out;
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(2, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("distribution for four participants, threshold three") {
  const auto d = build_distribution(4, 3);
  CHECK(d.m == 6);
  CHECK(d.a_sets == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(d.slots_of(1) == std::vector<int>{4, 5, 6});
  CHECK(d.slots_of(2) == std::vector<int>{2, 3, 6});
  CHECK(d.slots_of(3) == std::vector<int>{1, 3, 5});
  CHECK(d.slots_of(4) == std::vector<int>{1, 2, 4});
}

TEST_CASE("distribution for three participants, threshold two") {
  const auto d = build_distribution(3, 2);
  CHECK(d.m == 3);
  CHECK(d.a_sets == std::vector<std::vector<int>>{{1}, {2}, {3}});
  CHECK(d.slots_of(1) == std::vector<int>{2, 3});
  CHECK(d.slots_of(2) == std::vector<int>{1, 3});
  CHECK(d.slots_of(3) == std::vector<int>{1, 2});
}

TEST_CASE("threshold one hands everything to everyone") {
  const auto d = build_distribution(2, 1);
  CHECK(d.m == 1);
  CHECK(d.a_sets == std::vector<std::vector<int>>{{}});
  CHECK(d.slots_of(1) == std::vector<int>{1});
  CHECK(d.slots_of(2) == std::vector<int>{1});
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(build_distribution(3, 4), Error);
  CHECK_THROWS_AS(build_distribution(3, 0), Error);
  try {
    (void)build_distribution(40, 20, 1000);
    FAIL("expected size cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCapExceeded);
  }
}

TEST_CASE("exhaustive threshold property for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    for (int t = 1; t <= n; ++t) {
      const auto d = build_distribution(n, t);
      CHECK(d.m == binomial(n, t - 1));
      for (int i = 1; i <= n; ++i) CHECK(d.slots_of(i).size() == binomial(n - 1, t - 1));
      for (std::size_t j = 1; j <= d.m; ++j) {
        int holders = 0;
        for (int i = 1; i <= n; ++i) {
          const auto& s = d.slots_of(i);
          const bool holds = std::ranges::binary_search(s, static_cast<int>(j));
          const auto& a = d.a_sets[j - 1];
          CHECK(holds == !std::ranges::binary_search(a, i));
          holders += holds ? 1 : 0;
        }
        CHECK(holders == n - (t - 1));
      }
      for (const auto& group : subsets(n, t)) {
        const auto items = reconstruct_items<int>(n, d.m, provide(d, group));
        CHECK(items.size() == d.m);
        CHECK(items.back() == static_cast<int>(d.m - 1) * 10 + 7);
      }
      if (t == 1) continue;
      for (const auto& group : subsets(n, t - 1)) {
        try {
          (void)reconstruct_items<int>(n, d.m, provide(d, group));
          FAIL("t-1 shares reconstructed");
        } catch (const CoverageError& e) {
          // exactly the slot whose A_j is this group
          const auto it = std::ranges::find(d.a_sets, group);
          const int j = static_cast<int>(it - d.a_sets.begin()) + 1;
          CHECK(e.missing_slots() == std::vector<int>{j});
        }
      }
    }
  }
}

TEST_CASE("reconstruct_items errors") {
  const auto d = build_distribution(4, 3);
  CHECK_THROWS_AS(reconstruct_items<int>(4, d.m, provide(d, {1, 1, 2})), Error);
  CHECK_THROWS_AS(reconstruct_items<int>(4, d.m, provide(d, {2})), CoverageError);
  try {
    (void)reconstruct_items<int>(4, d.m, provide(d, {1, 1, 2}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateParticipant);
  }
  for (int i = 1; i <= 4; ++i) CHECK_THROWS_AS(reconstruct_items<int>(4, d.m, provide(d, {i})), CoverageError);
  CHECK(reconstruct_items<int>(4, d.m, provide(d, {1, 2, 3, 4})).size() == 6);

  auto bad = provide(d, {1, 2, 3});
  bad[1].items[2].payload += 1;  // slot 6, also held by participant 1
  CHECK_THROWS_AS(reconstruct_items<int>(4, d.m, bad), Error);
  auto out_of_range = provide(d, {1, 2, 3});
  out_of_range[0].participant = 9;
  CHECK_THROWS_AS(reconstruct_items<int>(4, d.m, out_of_range), Error);
}

TEST_CASE("sampled verification path for larger instances") {
  const auto d = build_distribution(14, 7);
  CHECK(d.m == binomial(14, 6));
  CHECK_NOTHROW(verify_distribution(d));
}
