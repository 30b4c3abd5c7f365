#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/ratmat.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit {

// ElGamal-style public-key scheme over an automorphism f of F(x_1..x_q):
//   public  c = f^n(a)
//   encrypt (c1, c2) = (m f^t(c), f^t(a))
//   decrypt m = c1 f^n(c2)^-1
// The matrix variant sends g(m) g(f^t(c)) through a Lehner representation g
// and restricts m to a single letter x_i^{+-1}.

enum class PkMode { Word, Matrix };

inline constexpr unsigned long kDefaultExponentCap = 64;
// Words f^k(w) longer than this raise SizeCapExceeded instead of exhausting memory.
inline constexpr std::size_t kMaxWordLetters = std::size_t{1} << 24;

struct PkPublic {
  int rank = 0;
  Word base;                  // a
  Endomorphism automorphism;  // f, as images of the generators
  Word published;             // c = f^n(a)
  PkMode mode = PkMode::Word;
  std::vector<Rational> lehner_params;  // matrix mode only
};

struct PkPrivate {
  unsigned long exponent = 0;  // n
};

struct PkKeyPair {
  PkPublic pub;
  PkPrivate priv;
  std::vector<std::string> warnings;
};

/// Throws NotABasis unless the images of f Nielsen-reduce to x_1..x_q up to
/// signs and order, i.e. f is an automorphism.
void certify_automorphism(const Endomorphism& f);

/// The automorphism sending x_i to the i-th entry of t applied to the basis.
Endomorphism automorphism_from_transcript(int rank, const Transcript& t);

/// Warns (does not fail) when f^k is the identity for some k <= exponent_cap or when
/// c = a. Matrix mode defaults the Lehner parameters to 3j - 1.
PkKeyPair pk_keygen(int rank, const Word& base, const Endomorphism& f, unsigned long exponent,
                    PkMode mode = PkMode::Word, std::optional<std::vector<Rational>> lehner_params = std::nullopt,
                    unsigned long exponent_cap = kDefaultExponentCap);

struct PkCiphertext {
  std::variant<Word, RatMatrix> c1;
  Word c2;
};

PkCiphertext pk_encrypt(const PkPublic& pub, const Word& message, unsigned long t,
                        unsigned long exponent_cap = kDefaultExponentCap);

/// Matrix mode throws DecryptionFailure if c1 f^n(c2)^-1 matches none of
/// the 2q images g(x_i)^{+-1}.
Word pk_decrypt(const PkPublic& pub, const PkPrivate& priv, const PkCiphertext& ciphertext);

}  // namespace nielsenkit
