#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit {

/// Exact rational in lowest terms with positive denominator.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional leading '-'); the result is canonical.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

Rational abs(const Rational& value);

/// A 2x2 rational matrix of determinant exactly 1.
class RatMatrix {
 public:
  /// Throws NotDeterminantOne unless a*d - b*c == 1.
  RatMatrix(Rational a, Rational b, Rational c, Rational d);

  static RatMatrix identity();

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& c() const noexcept { return c_; }
  const Rational& d() const noexcept { return d_; }

  Rational determinant() const { return a_ * d_ - b_ * c_; }
  std::string to_string() const;

  friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  friend RatMatrix mat_mul(const RatMatrix& x, const RatMatrix& y);
  friend RatMatrix mat_inv(const RatMatrix& x);

 private:
  struct Unchecked {};
  RatMatrix(Unchecked, Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  Rational a_, b_, c_, d_;
};

RatMatrix mat_mul(const RatMatrix& x, const RatMatrix& y);
RatMatrix mat_inv(const RatMatrix& x);
inline Rational trace(const RatMatrix& x) { return x.a() + x.d(); }

// Group-element interface shared with Word, so transcripts replay on
// matrix tuples through the same code path.
inline RatMatrix mul(const RatMatrix& x, const RatMatrix& y) { return mat_mul(x, y); }
inline RatMatrix inv(const RatMatrix& x) { return mat_inv(x); }
inline bool is_trivial(const RatMatrix& x) { return x == RatMatrix::identity(); }

/// Images of x_1..x_q in SL(2,Q).
struct Representation {
  std::vector<RatMatrix> images;

  int rank() const noexcept { return static_cast<int>(images.size()); }
};

/// Throws InvalidParameter (naming the 1-based failing index) unless
/// r_1 >= 2 and r_{j+1} - r_j >= 3; these make the Lehner matrices free.
void validate_lehner_params(std::span<const Rational> r);

/// M_j = [[-r_j, r_j^2 - 1], [1, -r_j]], after validating `r`.
std::vector<RatMatrix> lehner_generators(std::span<const Rational> r);

/// r_j = 3j - 1, the smallest integer-spaced admissible parameters.
std::vector<Rational> default_lehner_params(int count);

Representation lehner_representation(std::span<const Rational> r);

/// Homomorphic image of `u`; the empty word maps to the identity.
RatMatrix eval_word(const Representation& rep, const Word& u);

std::vector<RatMatrix> eval_tuple(const Representation& rep, std::span<const Word> words);

/// Matrix mirror of apply_transcript: if N = eval(U) elementwise, then
/// apply_transcript_mat(N, t) = eval(apply_transcript(U, t)).
inline std::vector<RatMatrix> apply_transcript_mat(std::vector<RatMatrix> tuple, const Transcript& t) {
  return apply_transcript(std::move(tuple), t);
}

}  // namespace nielsenkit
