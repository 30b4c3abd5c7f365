#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <vector>

#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/ratmat.hpp"
#include "nielsenkit/word.hpp"
#include "oracles.hpp"

namespace support {

using nielsenkit::Word;

inline Word W(std::initializer_list<int> letters) { return Word::reduce(letters); }

inline std::vector<Word> words(const std::vector<oracle::Raw>& raws) {
  std::vector<Word> out;
  for (const auto& r : raws) out.push_back(Word::reduce(r));
  return out;
}

inline std::vector<oracle::Raw> raws(const std::vector<Word>& ws) {
  std::vector<oracle::Raw> out;
  for (const auto& w : ws) out.push_back(w.letters());
  return out;
}

inline oracle::Raw random_raw(std::mt19937_64& rng, int rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, rank);
  std::bernoulli_distribution neg(0.5);
  oracle::Raw w(len(rng));
  for (int& x : w) x = neg(rng) ? -gen(rng) : gen(rng);
  return w;
}

inline Word random_word(std::mt19937_64& rng, int rank, std::size_t max_len) {
  return Word::reduce(random_raw(rng, rank, max_len));
}

inline oracle::M2 to_m2(const nielsenkit::RatMatrix& m) { return {m.a(), m.b(), m.c(), m.d()}; }

inline bool same(const nielsenkit::RatMatrix& m, const oracle::M2& x) {
  return m.a() == x[0] && m.b() == x[1] && m.c() == x[2] && m.d() == x[3];
}

// Nielsen-reduced tuple drawn at random, certified by the exhaustive scan.
inline std::vector<Word> random_reduced_tuple(std::mt19937_64& rng, int rank, int arity, std::size_t max_len) {
  while (true) {
    std::vector<oracle::Raw> tuple;
    for (int k = 0; k < arity; ++k) tuple.push_back(oracle::reduce(random_raw(rng, rank, max_len)));
    if (oracle::nielsen_reduced(tuple)) return words(tuple);
  }
}

// Random regular transcript with between 1 and max_moves moves.
inline nielsenkit::Transcript random_transcript(std::mt19937_64& rng, int arity, std::size_t max_moves) {
  std::uniform_int_distribution<std::size_t> count(1, max_moves);
  return nielsenkit::random_regular_transcript(arity, count(rng), rng);
}

// Upper bound on |f^k(w)| from letter counts alone: entry (i, j) of the count
// matrix is how often x_i^{+-1} occurs in f(x_j). Saturates at `cap`.
inline std::uint64_t letter_bound(const nielsenkit::Endomorphism& f, const Word& w, unsigned long k,
                                  std::uint64_t cap) {
  const std::size_t q = static_cast<std::size_t>(f.rank());
  std::vector<std::uint64_t> counts(q, 0);
  for (int letter : w.letters()) ++counts[static_cast<std::size_t>(std::abs(letter) - 1)];
  for (unsigned long step = 0; step < k; ++step) {
    std::vector<std::uint64_t> next(q, 0);
    for (std::size_t j = 0; j < q; ++j) {
      for (int letter : f.images()[j].letters()) {
        auto& slot = next[static_cast<std::size_t>(std::abs(letter) - 1)];
        slot = std::min(cap, slot + counts[j]);
      }
    }
    counts = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto c : counts) total = std::min(cap, total + c);
  return total;
}

}  // namespace support
