#include <doctest.h>

#include "nielsenkit/error.hpp"
#include "nielsenkit/pubkey.hpp"
#include "support.hpp"

using namespace nielsenkit;
using support::W;

namespace {

// Plain substitution: replace every letter by its image, reduce, k times.
oracle::Raw substitute(const std::vector<oracle::Raw>& images, oracle::Raw w, unsigned long k) {
  for (unsigned long step = 0; step < k; ++step) {
    oracle::Raw next;
    for (int letter : w) {
      const auto& img = images.at(static_cast<std::size_t>(std::abs(letter) - 1));
      const oracle::Raw piece = letter > 0 ? img : oracle::inverse(img);
      next.insert(next.end(), piece.begin(), piece.end());
    }
    w = oracle::reduce(next);
  }
  return w;
}

Endomorphism endo(std::initializer_list<std::initializer_list<int>> images) {
  std::vector<Word> out;
  for (const auto& img : images) out.push_back(W(img));
  return Endomorphism(out);
}

}  // namespace

TEST_CASE("keygen on hand examples") {
  const Endomorphism f = endo({{1, 2}, {2}});
  const auto keys = pk_keygen(2, W({1}), f, 2);
  CHECK(keys.pub.published == W({1, 2, 2}));
  CHECK(substitute({{1, 2}, {2}}, {1}, 2) == oracle::Raw{1, 2, 2});
  CHECK(keys.warnings.empty());

  const Endomorphism g = endo({{2}, {1, 2}});
  const auto k2 = pk_keygen(2, W({1, 2}), g, 1);
  CHECK(k2.pub.published == W({2, 1, 2}));
  CHECK(substitute({{2}, {1, 2}}, {1, 2}, 1) == oracle::Raw{2, 1, 2});
}

TEST_CASE("degenerate keys warn") {
  const auto id = pk_keygen(2, W({1, 2}), Endomorphism::identity(2), 3);
  CHECK(id.pub.published == W({1, 2}));
  CHECK(id.warnings.size() == 2);

  // swapping the generators has order 2
  const auto swap = pk_keygen(2, W({1}), endo({{2}, {1}}), 1);
  REQUIRE(swap.warnings.size() == 1);
  CHECK(swap.warnings[0].find("order 2") != std::string::npos);
}

TEST_CASE("keygen rejects bad input") {
  CHECK_THROWS_AS(pk_keygen(2, W({1}), endo({{1, 2}, {1, 2}}), 1), Error);
  CHECK_THROWS_AS(pk_keygen(2, W({1}), endo({{1, 1}, {2}}), 1), Error);
  try {
    (void)pk_keygen(2, W({1}), endo({{1, 1}, {2}}), 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotABasis);
  }
  CHECK_THROWS_AS(pk_keygen(2, W({}), endo({{1, 2}, {2}}), 1), Error);
  CHECK_THROWS_AS(pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 0), Error);
  CHECK_THROWS_AS(pk_keygen(2, W({3}), endo({{1, 2}, {2}}), 1), Error);
  CHECK_THROWS_AS(pk_keygen(3, W({1}), endo({{1, 2}, {2}}), 1), Error);
  CHECK_THROWS_AS(pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 65), Error);
}

TEST_CASE("encrypt and decrypt the hand example") {
  const auto keys = pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 2);
  const auto c = pk_encrypt(keys.pub, W({2, 1}), 1);
  CHECK(std::get<Word>(c.c1) == W({2, 1, 1, 2, 2, 2}));
  CHECK(c.c2 == W({1, 2}));
  // m f(c) = x2 x1 . x1 x2 x2 x2 before any cancellation
  CHECK(oracle::times({2, 1}, substitute({{1, 2}, {2}}, {1, 2, 2}, 1)) == oracle::Raw{2, 1, 1, 2, 2, 2});
  CHECK(pk_decrypt(keys.pub, keys.priv, c) == W({2, 1}));

  const auto empty = pk_encrypt(keys.pub, W({}), 3);
  CHECK(std::get<Word>(empty.c1).letters() == substitute({{1, 2}, {2}}, {1, 2, 2}, 3));
  CHECK(pk_decrypt(keys.pub, keys.priv, empty).empty());

  const auto zero = pk_encrypt(keys.pub, W({2, 1}), 0);
  CHECK(std::get<Word>(zero.c1) == mul(W({2, 1}), keys.pub.published));
  CHECK(zero.c2 == W({1}));
  CHECK(pk_decrypt(keys.pub, keys.priv, zero) == W({2, 1}));
}

TEST_CASE("cancellation inside m f^t(c)") {
  const auto keys = pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 2);
  // f(c) = x1 x2^3, so x2^-2 x1^-1 . x1 x2^3 = x2
  const auto c = pk_encrypt(keys.pub, W({-2, -2, -1}), 1);
  CHECK(std::get<Word>(c.c1) == W({2}));
  CHECK(pk_decrypt(keys.pub, keys.priv, c) == W({-2, -2, -1}));
}

TEST_CASE("matrix mode") {
  const std::vector<Rational> r{2, 5};
  const auto keys = pk_keygen(2, W({1, 2}), endo({{1, 2}, {2}}), 3, PkMode::Matrix, r);
  CHECK(keys.pub.lehner_params == r);
  const auto c = pk_encrypt(keys.pub, W({-1}), 2);
  const auto& c1 = std::get<RatMatrix>(c.c1);
  CHECK(c1.determinant() == 1);

  // G = c1 g(f^n(c2))^-1 evaluated by hand
  const std::vector<oracle::M2> gens{oracle::lehner(2), oracle::lehner(5)};
  const oracle::Raw mask = substitute({{1, 2}, {2}}, c.c2.letters(), 3);
  const oracle::M2 g = oracle::mm(support::to_m2(c1), oracle::minv(oracle::eval(mask, gens)));
  CHECK(g == oracle::minv(gens[0]));
  CHECK(pk_decrypt(keys.pub, keys.priv, c) == W({-1}));

  CHECK_THROWS_AS(pk_encrypt(keys.pub, W({1, 2}), 1), Error);
  CHECK_THROWS_AS(pk_encrypt(keys.pub, W({}), 1), Error);

  auto tampered = c;
  tampered.c1 = mat_mul(c1, c1);
  try {
    (void)pk_decrypt(keys.pub, keys.priv, tampered);
    FAIL("tampered ciphertext decrypted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DecryptionFailure);
  }
  const auto word_keys = pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 2);
  CHECK_THROWS_AS(pk_decrypt(word_keys.pub, word_keys.priv, c), Error);
  CHECK_THROWS_AS(pk_keygen(2, W({1}), endo({{1, 2}, {2}}), 1, PkMode::Matrix, std::vector<Rational>{2}), Error);
}

TEST_CASE("automorphism from a transcript") {
  const Transcript t{{Move::multiply_right(1, 2), Move::invert(2)}};
  const Endomorphism f = automorphism_from_transcript(2, t);
  CHECK(f == endo({{1, 2}, {-2}}));
  CHECK_NOTHROW(certify_automorphism(f));
  CHECK_THROWS_AS(automorphism_from_transcript(2, Transcript{{Move::remove(1)}, false}), Error);
}

TEST_CASE("powers commute and substitution matches the oracle") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 100; ++k) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const Endomorphism f = automorphism_from_transcript(q, support::random_transcript(rng, q, 3));
    std::vector<oracle::Raw> images;
    for (const auto& w : f.images()) images.push_back(w.letters());
    const Word w = support::random_word(rng, q, 5);
    const unsigned long n = rng() % 5;
    const unsigned long t = rng() % 5;
    const Word a = apply_endo(endo_power(f, n), apply_endo(endo_power(f, t), w));
    const Word b = apply_endo(endo_power(f, t), apply_endo(endo_power(f, n), w));
    CHECK(a == b);
    CHECK(a.letters() == substitute(images, w.letters(), n + t));
  }
}

TEST_CASE("random round trips") {
  // Draws whose words could outgrow the budget are redrawn.
  constexpr std::uint64_t budget = std::uint64_t{1} << 17;
  std::mt19937_64 rng(62);
  int done = 0;
  while (done < 150) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const Endomorphism f = automorphism_from_transcript(q, support::random_transcript(rng, q, 3));
    Word a;
    while (a.empty()) a = support::random_word(rng, q, 6);
    const unsigned long n = 1 + rng() % 12;
    const Word m = support::random_word(rng, q, 10);
    const unsigned long t = 1 + rng() % 12;
    if (support::letter_bound(f, a, n + t, budget) >= budget) continue;
    const auto keys = pk_keygen(q, a, f, n);
    const auto c = pk_encrypt(keys.pub, m, t);
    CHECK(pk_decrypt(keys.pub, keys.priv, c) == m);
    ++done;
  }
}

TEST_CASE("letter bound never underestimates") {
  std::mt19937_64 rng(63);
  for (int k = 0; k < 200; ++k) {
    const int q = 2 + static_cast<int>(rng() % 2);
    const Endomorphism f = automorphism_from_transcript(q, support::random_transcript(rng, q, 3));
    const Word w = support::random_word(rng, q, 6);
    const unsigned long e = rng() % 8;
    CHECK(apply_endo(endo_power(f, e), w).length() <= support::letter_bound(f, w, e, UINT64_MAX));
  }
}

TEST_CASE("oversized words raise the size cap") {
  // x1 -> x1 x2, x2 -> x2 x1 x2 grows by a factor above 2.6 per step
  const Endomorphism f = endo({{1, 2}, {2, 1, 2}});
  try {
    (void)pk_keygen(2, W({1, 2}), f, 40, PkMode::Word, std::nullopt, 64);
    FAIL("expected size cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeCapExceeded);
  }
}
