#include <doctest.h>

#include <algorithm>
#include <bit>

#include "nielsenkit/error.hpp"
#include "nielsenkit/sss.hpp"
#include "support.hpp"
#include "dealer_example.hpp"

using namespace nielsenkit;
using support::W;

namespace {

Rational Q(const char* s) { return parse_rational(s); }

std::vector<Rational> ints(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

template <typename Share>
std::vector<Share> pick(const std::vector<Share>& all, const std::vector<int>& who) {
  std::vector<Share> out;
  for (int i : who) out.push_back(all.at(static_cast<std::size_t>(i - 1)));
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("combinatorial scheme on the four-participant example") {
  const auto values = ints({2, 1, 2, 8, 4, 2});
  const auto deal = deal_combinatorial(4, 3, values);
  CHECK(deal.secret == Q("23/8"));
  CHECK(deal.sum == Q("23/8"));
  CHECK_FALSE(deal.special_factor.has_value());
  REQUIRE(deal.shares.size() == 4);
  const auto& r1 = deal.shares[0].items;
  REQUIRE(r1.size() == 3);
  CHECK(r1[0].slot == 4);
  CHECK(r1[0].payload == 8);
  CHECK(r1[1].payload == 4);
  CHECK(r1[2].payload == 2);

  CHECK(reconstruct_combinatorial(pick(deal.shares, {1, 2, 3})) == Q("23/8"));
  CHECK(reconstruct_combinatorial(deal.shares) == Q("23/8"));
  CHECK_THROWS_AS(reconstruct_combinatorial(pick(deal.shares, {1, 2})), CoverageError);
  CHECK_THROWS_AS(reconstruct_combinatorial(pick(deal.shares, {1, 1, 2})), Error);
  CHECK_THROWS_AS(reconstruct_combinatorial(std::vector<CombinatorialShare>{}), CoverageError);
}

TEST_CASE("combinatorial scheme edge cases") {
  CHECK(deal_combinatorial(4, 3, ints({1, 1, 1, 1, 1, 1})).secret == 6);
  CHECK_THROWS_AS(deal_combinatorial(4, 3, ints({1, 2, 3})), Error);
  CHECK_THROWS_AS(deal_combinatorial(4, 3, ints({1, 2, 3, 0, 5, 6})), Error);
  CHECK_THROWS_AS(deal_combinatorial(4, 3, std::vector<Rational>{1, 2, 3, Q("1/2"), 5, 6}), Error);
}

TEST_CASE("special secret factor") {
  const auto deal = deal_combinatorial(4, 3, ints({2, 1, 2, 8, 4, 2}), Rational(1));
  REQUIRE(deal.special_factor.has_value());
  CHECK(*deal.special_factor == Q("8/23"));
  CHECK(Rational(1) / Q("23/8") == Q("8/23"));
  CHECK(deal.secret == 1);
  for (const auto& s : deal.shares) CHECK(s.special_factor == deal.special_factor);
  CHECK(reconstruct_combinatorial(pick(deal.shares, {2, 3, 4})) == 1);
}

TEST_CASE("every threshold subset of the example reconstructs, smaller ones fail") {
  const auto deal = deal_combinatorial(4, 3, ints({2, 1, 2, 8, 4, 2}));
  for (const auto& g : subsets(4, 3)) CHECK(reconstruct_combinatorial(pick(deal.shares, g)) == Q("23/8"));
  for (const auto& g : subsets(4, 2)) CHECK_THROWS_AS(reconstruct_combinatorial(pick(deal.shares, g)), CoverageError);
}

TEST_CASE("secret functions") {
  const auto m = lehner_generators(dealer_example::lehner_params());
  CHECK(evaluate_matrix_secret(SecretFn::SumInvAbsTrace, m) == Q("589/2310"));
  CHECK(Rational(1, 7) + Rational(1, 15) + Rational(1, 22) == Q("589/2310"));
  CHECK(evaluate_matrix_secret(SecretFn::SumTraceSq, m) == 758);
  CHECK(evaluate_matrix_secret(SecretFn::ProdAbsTrace, m) == 7 * 15 * 22);
  CHECK(evaluate_matrix_secret(SecretFn::SumAbsTrace, m) == 44);
  CHECK(evaluate_matrix_secret(SecretFn::ProdTraceSq, m) == 49 * 225 * 484);
  // tr(A^2) = tr(A)^2 - 2 for determinant one
  CHECK(evaluate_matrix_secret(SecretFn::SumTraceOfSquares, m) == 758 - 6);
  CHECK_THROWS_AS(evaluate_matrix_secret(SecretFn::ProdCommutatorTrace, m), Error);
  const std::vector<RatMatrix> pair(m.begin(), m.begin() + 2);
  CHECK(evaluate_matrix_secret(SecretFn::ProdCommutatorTrace, pair) == commutator_trace(m[0], m[1]));
  const auto hand = oracle::mm(oracle::mm(support::to_m2(m[0]), support::to_m2(m[1])),
                               oracle::mm(oracle::minv(support::to_m2(m[0])), oracle::minv(support::to_m2(m[1]))));
  CHECK(commutator_trace(m[0], m[1]) == hand[0] + hand[3]);
  CHECK_THROWS_AS(evaluate_matrix_secret(SecretFn::SumInv, m), Error);

  for (SecretFn fn : {SecretFn::SumInvAbsTrace, SecretFn::SumInv, SecretFn::ProdAbsTrace, SecretFn::SumAbsTrace,
                      SecretFn::ProdTraceSq, SecretFn::SumTraceSq, SecretFn::ProdCommutatorTrace,
                      SecretFn::SumTraceOfSquares, SecretFn::SumInvLength}) {
    CHECK(parse_secret_fn(secret_fn_name(fn)) == fn);
  }
  CHECK_THROWS_AS(parse_secret_fn("bogus"), Error);
}

TEST_CASE("matrix scheme on the three-participant example") {
  const auto deal = deal_nielsen(3, 2, dealer_example::lehner_params(), dealer_example::transcript());
  CHECK(deal.secret == Q("589/2310"));
  CHECK(deal.warnings.empty());
  const auto& last = dealer_example::rows().back();
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(deal.words[k].letters() == last.words[k]);
    CHECK(deal.matrices[k] == dealer_example::matrix(last.matrices[k]));
  }
  REQUIRE(deal.shares.size() == 3);
  CHECK(deal.shares[0].matrix_set == 2);
  CHECK(deal.shares[1].matrix_set == 3);
  CHECK(deal.shares[2].matrix_set == 1);
  // P1 holds R1 = {u2, u3} and S2 = {N1, N3}
  CHECK(deal.shares[0].words.size() == 2);
  CHECK(deal.shares[0].words[0].slot == 2);
  CHECK(deal.shares[0].matrices[0].slot == 1);
  CHECK(deal.shares[0].matrices[1].slot == 3);

  const auto rec = recover_nielsen(pick(deal.shares, {1, 2}));
  CHECK(rec.secret == Q("589/2310"));
  CHECK(is_signed_basis(rec.reduction.reduced_tuple));
  const auto gens = lehner_generators(dealer_example::lehner_params());
  CHECK(rec.generators == gens);
  for (const auto& mat : rec.reduced_matrices) {
    CHECK(std::ranges::any_of(gens, [&](const RatMatrix& g) { return mat == g || mat == mat_inv(g); }));
  }
  CHECK(reconstruct_nielsen(deal.shares) == Q("589/2310"));
  CHECK(reconstruct_nielsen(pick(deal.shares, {3, 1})) == Q("589/2310"));
  for (int i = 1; i <= 3; ++i) CHECK_THROWS_AS(reconstruct_nielsen(pick(deal.shares, {i})), CoverageError);
}

TEST_CASE("matrix scheme options") {
  const auto empty = deal_nielsen(3, 2, dealer_example::lehner_params(), Transcript{});
  CHECK_FALSE(empty.warnings.empty());
  CHECK(empty.words == basis_tuple(3));
  CHECK(reconstruct_nielsen(pick(empty.shares, {1, 3})) == Q("589/2310"));

  const auto sq = deal_nielsen(3, 2, dealer_example::lehner_params(), dealer_example::transcript(), SecretFn::SumTraceSq);
  CHECK(sq.secret == 758);
  CHECK(reconstruct_nielsen(pick(sq.shares, {2, 3})) == 758);

  const auto special =
      deal_nielsen(3, 2, dealer_example::lehner_params(), dealer_example::transcript(), SecretFn::SumInvAbsTrace, Rational(5));
  CHECK(special.secret == 5);
  CHECK(reconstruct_nielsen(pick(special.shares, {1, 2})) == 5);

  CHECK_THROWS_AS(deal_nielsen(3, 2, std::vector<Rational>{2, 4, 9}, dealer_example::transcript()), Error);
  CHECK_THROWS_AS(deal_nielsen(3, 2, dealer_example::lehner_params(), Transcript{{Move::remove(1)}, false}), Error);
  CHECK_THROWS_AS(deal_nielsen(3, 2, dealer_example::lehner_params(), dealer_example::transcript(), SecretFn::ProdCommutatorTrace),
                  Error);
  CHECK_THROWS_AS(deal_nielsen(3, 2, dealer_example::lehner_params(), dealer_example::transcript(), SecretFn::SumInvLength), Error);
}

TEST_CASE("commutator secret survives reconstruction in dealer order") {
  // n = 4, t = 2 gives m = 4 generators
  std::mt19937_64 rng(41);
  const auto r = default_lehner_params(4);
  for (int k = 0; k < 20; ++k) {
    const Transcript t = support::random_transcript(rng, 4, 20);
    const auto deal = deal_nielsen(4, 2, r, t, SecretFn::ProdCommutatorTrace);
    const auto gens = lehner_generators(r);
    CHECK(deal.secret == commutator_trace(gens[0], gens[1]) * commutator_trace(gens[2], gens[3]));
    for (const auto& g : subsets(4, 2)) CHECK(reconstruct_nielsen(pick(deal.shares, g)) == deal.secret);
  }
}

TEST_CASE("matrix scheme end to end on random instances") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 40; ++k) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const int t = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const int m = static_cast<int>(binomial(n, t - 1));
    if (m > 6) continue;
    std::vector<Rational> r;
    Rational next(4 + static_cast<int>(rng() % 5), 2);
    next.canonicalize();
    for (int i = 0; i < m; ++i) {
      r.push_back(next);
      Rational step(6 + static_cast<int>(rng() % 4), 2);
      step.canonicalize();
      next += step;
    }
    const Transcript tr = support::random_transcript(rng, m, 30);
    const auto deal = deal_nielsen(n, t, r, tr);
    CHECK(deal.secret == evaluate_matrix_secret(SecretFn::SumInvAbsTrace, lehner_generators(r)));
    for (const auto& g : subsets(n, t)) CHECK(reconstruct_nielsen(pick(deal.shares, g)) == deal.secret);
    if (t > 1) {
      for (const auto& g : subsets(n, t - 1)) CHECK_THROWS_AS(reconstruct_nielsen(pick(deal.shares, g)), CoverageError);
    }
  }
}

TEST_CASE("length scheme") {
  const auto basis = deal_length(3, 2, 3, basis_tuple(3), dealer_example::transcript());
  CHECK(basis.secret == 3);
  CHECK(reconstruct_length(pick(basis.shares, {1, 3})) == 3);

  const std::vector<Word> u{W({1, 2}), W({2, -3, 2})};
  CHECK(oracle::nielsen_reduced(support::raws(u)));
  const Transcript t{{Move::multiply_right(1, 2), Move::invert(2), Move::multiply_right(2, 1)}};
  const auto deal = deal_length(2, 2, 3, u, t);
  CHECK(deal.secret == Q("5/6"));
  CHECK(deal.scrambled == apply_transcript(u, t));
  const auto rec = recover_length(deal.shares);
  CHECK(rec.secret == Q("5/6"));
  CHECK(rec.total_length == 5);
  CHECK_THROWS_AS(reconstruct_length(pick(deal.shares, {1})), CoverageError);

  const auto plain = deal_length(2, 2, 3, u, Transcript{});
  CHECK(reconstruct_length(plain.shares) == Q("5/6"));

  CHECK_THROWS_AS(deal_length(2, 2, 3, std::vector<Word>{W({1, 2}), W({2})}, t), Error);
  try {
    (void)deal_length(2, 2, 3, std::vector<Word>{W({1, 2}), W({2})}, t);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNielsenReduced);
  }
  CHECK_THROWS_AS(deal_length(2, 2, 3, u, Transcript{{Move::remove(1)}, false}), Error);
  CHECK_THROWS_AS(deal_length(2, 2, 2, u, t), Error);
}

TEST_CASE("length scheme invariance on random reduced tuples") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const auto u = support::random_reduced_tuple(rng, 3, 3, 4);
    const Transcript t = support::random_transcript(rng, 3, 20);
    const auto deal = deal_length(3, 2, 3, u, t);
    const auto rec = recover_length(pick(deal.shares, {1, 2}));
    std::size_t total = 0;
    for (const auto& w : u) total += w.length();
    CHECK(rec.total_length == total);
    CHECK(rec.secret == deal.secret);
    CHECK(deal.secret == sum_inverse_lengths(u));
  }
}
