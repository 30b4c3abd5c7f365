#include "nielsenkit/pubkey.hpp"

#include "nielsenkit/error.hpp"

namespace nielsenkit {

namespace {

constexpr std::size_t kOrderProbeLetters = 1'000'000;

std::size_t total_length(const Endomorphism& f) {
  std::size_t total = 0;
  for (const Word& w : f.images()) total += w.length();
  return total;
}

// Smallest k <= limit with f^k = id, or 0. Gives up once the images of f^k
// outgrow kOrderProbeLetters, since a finite-order f keeps them bounded.
unsigned long small_order(const Endomorphism& f, unsigned long limit) {
  Endomorphism power = f;
  for (unsigned long k = 1; k <= limit; ++k) {
    if (power.is_identity()) return k;
    if (total_length(power) > kOrderProbeLetters) return 0;
    power = compose(f, power);
  }
  return 0;
}

void check_exponent(unsigned long value, unsigned long cap, const char* name) {
  if (value > cap) {
    throw Error(ErrorKind::InvalidParameter, std::string(name) + " = " + std::to_string(value) +
                                                 " exceeds the cap " + std::to_string(cap));
  }
}

Representation representation_of(const PkPublic& pub) {
  return lehner_representation(pub.lehner_params);
}

// f^k(w) by k substitutions, refusing words beyond kMaxWordLetters.
Word shift(const Endomorphism& f, unsigned long k, Word w) {
  for (unsigned long step = 0; step < k; ++step) {
    w = apply_endo(f, w);
    if (w.length() > kMaxWordLetters) {
      throw Error(ErrorKind::SizeCapExceeded, "f^" + std::to_string(step + 1) + " of a word exceeds " +
                                                  std::to_string(kMaxWordLetters) + " letters");
    }
  }
  return w;
}

// g(f^k(w)) without expanding f^k(w): the images g(f^k(x_i)) are built by
// evaluating the words f(x_i) on the previous images.
RatMatrix shifted_matrix(const Representation& rep, const Endomorphism& f, unsigned long k, const Word& w) {
  Representation current = rep;
  for (unsigned long step = 0; step < k; ++step) {
    Representation next;
    for (const Word& image : f.images()) next.images.push_back(eval_word(current, image));
    current = std::move(next);
  }
  return eval_word(current, w);
}

}  // namespace

void certify_automorphism(const Endomorphism& f) {
  if (f.rank() < 1) throw Error(ErrorKind::NotABasis, "automorphism has no generators");
  for (const Word& w : f.images()) {
    if (w.empty()) throw Error(ErrorKind::NotABasis, "an image of f is trivial");
  }
  ReductionResult reduced;
  try {
    reduced = nielsen_reduce(f.images());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ReductionStall) throw;
    throw Error(ErrorKind::NotABasis, std::string("images of f are not a basis: ") + e.what());
  }
  if (!is_signed_basis(reduced.reduced_tuple)) {
    throw Error(ErrorKind::NotABasis, "images of f generate a proper subgroup");
  }
}

Endomorphism automorphism_from_transcript(int rank, const Transcript& t) {
  require_regular(t, "automorphism_from_transcript");
  return Endomorphism(apply_transcript(basis_tuple(rank), t));
}

PkKeyPair pk_keygen(int rank, const Word& base, const Endomorphism& f, unsigned long exponent, PkMode mode,
                    std::optional<std::vector<Rational>> lehner_params, unsigned long exponent_cap) {
  if (rank < 1 || f.rank() != rank) {
    throw Error(ErrorKind::RankMismatch, "automorphism rank does not match q = " + std::to_string(rank));
  }
  base.check_rank(rank);
  if (base.empty()) throw Error(ErrorKind::InvalidParameter, "base word a must be nonempty");
  if (exponent < 1) throw Error(ErrorKind::InvalidParameter, "private exponent must be positive");
  check_exponent(exponent, exponent_cap, "n");
  certify_automorphism(f);

  PkKeyPair keys;
  keys.pub.rank = rank;
  keys.pub.base = base;
  keys.pub.automorphism = f;
  keys.pub.mode = mode;
  keys.priv.exponent = exponent;
  keys.pub.published = shift(f, exponent, base);

  if (mode == PkMode::Matrix) {
    keys.pub.lehner_params = lehner_params ? *lehner_params : default_lehner_params(rank);
    if (keys.pub.lehner_params.size() != static_cast<std::size_t>(rank)) {
      throw Error(ErrorKind::InvalidParameter, "need one Lehner parameter per generator");
    }
    const Representation rep = representation_of(keys.pub);
    std::vector<RatMatrix> candidates;
    for (const RatMatrix& m : rep.images) {
      candidates.push_back(m);
      candidates.push_back(mat_inv(m));
    }
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        if (candidates[a] == candidates[b]) {
          throw Error(ErrorKind::InvalidParameter, "representation maps two letters to the same matrix");
        }
      }
    }
  }

  if (const unsigned long order = small_order(f, exponent_cap); order > 0) {
    keys.warnings.push_back("degenerate key: f has order " + std::to_string(order));
  }
  if (keys.pub.published == base) keys.warnings.emplace_back("degenerate key: c equals a");
  return keys;
}

PkCiphertext pk_encrypt(const PkPublic& pub, const Word& message, unsigned long t, unsigned long exponent_cap) {
  check_exponent(t, exponent_cap, "t");
  message.check_rank(pub.rank);
  PkCiphertext out;
  if (pub.mode == PkMode::Word) {
    out.c1 = mul(message, shift(pub.automorphism, t, pub.published));
  } else {
    if (message.length() != 1) {
      throw Error(ErrorKind::InvalidParameter, "matrix mode encrypts a single letter x_i^{+-1}");
    }
    const Representation rep = representation_of(pub);
    out.c1 = mat_mul(eval_word(rep, message), shifted_matrix(rep, pub.automorphism, t, pub.published));
  }
  out.c2 = shift(pub.automorphism, t, pub.base);
  return out;
}

Word pk_decrypt(const PkPublic& pub, const PkPrivate& priv, const PkCiphertext& ciphertext) {
  ciphertext.c2.check_rank(pub.rank);
  if (pub.mode == PkMode::Word) {
    const Word mask = shift(pub.automorphism, priv.exponent, ciphertext.c2);
    const auto* c1 = std::get_if<Word>(&ciphertext.c1);
    if (c1 == nullptr) throw Error(ErrorKind::DecryptionFailure, "word-mode key given a matrix ciphertext");
    c1->check_rank(pub.rank);
    return mul(*c1, inv(mask));
  }

  const auto* c1 = std::get_if<RatMatrix>(&ciphertext.c1);
  if (c1 == nullptr) throw Error(ErrorKind::DecryptionFailure, "matrix-mode key given a word ciphertext");
  const Representation rep = representation_of(pub);
  const RatMatrix g = mat_mul(*c1, mat_inv(shifted_matrix(rep, pub.automorphism, priv.exponent, ciphertext.c2)));
  for (int i = 1; i <= pub.rank; ++i) {
    const RatMatrix& image = rep.images[static_cast<std::size_t>(i - 1)];
    if (g == image) return Word::generator(i);
    if (g == mat_inv(image)) return Word::generator(-i);
  }
  throw Error(ErrorKind::DecryptionFailure, "recovered matrix is not the image of a letter");
}

}  // namespace nielsenkit
