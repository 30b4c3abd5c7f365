#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/ratmat.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit {

/// Shared key of the polyalphabetic matrix cipher.
///
/// Letter a_t is encoded by the t-th entry of table row i, where row i is
/// the image of U' = phi(U) under the regular transcript f_i and i is the
/// block of the sequence P the letter falls into.
struct CipherKey {
  int alphabet_size = 26;  // N
  int rank = 2;            // q
  std::vector<Rational> lehner_params;
  std::vector<Word> basis;               // u_1..u_N
  std::vector<int> blocks;               // P = p_1..p_k, each in [1, 4]
  std::vector<Transcript> transcripts;   // f_1..f_k
  std::optional<std::vector<int>> sigma; // 1-based permutation of segments
  std::optional<Transcript> evolution;   // f in f_i f^counter
  unsigned long counter = 0;

  std::size_t block_span() const;  // sum of p_i
  /// f_i followed by `counter` copies of the evolution transcript.
  Transcript effective_transcript(std::size_t block) const;
  /// Structural checks plus the basis certificate. Throws on violation.
  void validate() const;
};

/// u_j = x_1^j x_2 x_1^-j, j = 1..N: a basis of a rank-N free subgroup of
/// F(x_1, x_2).
std::vector<Word> default_cipher_basis(int alphabet_size);

struct CipherKeygenOptions {
  int alphabet_size = 26;
  int rank = 2;
  std::vector<int> blocks;
  std::optional<std::vector<Rational>> lehner_params;  // default 3j - 1
  std::optional<std::vector<Word>> basis;              // default above
  std::optional<std::vector<Transcript>> transcripts;  // default: random
  std::size_t transcript_moves = 8;
  std::optional<std::vector<int>> sigma;
  std::optional<Transcript> evolution;
  std::size_t evolution_moves = 0;  // random evolution transcript if > 0
  std::uint64_t seed = 0;
};

/// Random parts are drawn from std::mt19937_64 seeded with `seed`, so a
/// seed reproduces the key exactly on one build; only key files are
/// interchangeable between implementations.
CipherKey cipher_keygen(const CipherKeygenOptions& options);

using CipherTable = std::vector<std::vector<RatMatrix>>;

/// Row i = f_i(U'). Throws InvalidParameter if a row repeats a matrix.
CipherTable build_tables(const CipherKey& key);

struct Ciphertext {
  std::vector<RatMatrix> matrices;
  std::size_t segments = 0;  // full segments of length sum(P)
  std::optional<std::string> sigma_id;
};

std::string sigma_id(std::span<const int> sigma);

/// Letters are 1..N. The message is cut into segments of length sum(P);
/// each segment is encrypted block by block, p_1 letters with row 1, then
/// p_2 letters with row 2, and so on. With sigma configured the message
/// must contain exactly |sigma| full segments: they are emitted in the
/// order S_sigma(1) .. S_sigma(m), and a shorter trailing remainder follows
/// unpermuted.
Ciphertext cipher_encrypt(const CipherKey& key, std::span<const int> message);
Ciphertext cipher_encrypt(const CipherKey& key, const CipherTable& table, std::span<const int> message);

/// Throws DecryptionFailure naming the position when a matrix is not in
/// its block's row.
std::vector<int> cipher_decrypt(const CipherKey& key, const Ciphertext& ciphertext);
std::vector<int> cipher_decrypt(const CipherKey& key, const CipherTable& table, const Ciphertext& ciphertext);

/// Advances the evolution counter; throws InvalidParameter without an
/// evolution transcript.
CipherKey evolve_key(const CipherKey& key, unsigned long steps = 1);

/// 'A' -> 1, 'B' -> 2, ...; letters beyond N are rejected.
std::vector<int> letters_from_text(std::string_view text, int alphabet_size);
std::string text_from_letters(std::span<const int> letters);

}  // namespace nielsenkit
