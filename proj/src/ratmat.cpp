#include "nielsenkit/ratmat.hpp"

#include <cctype>
#include <cstdlib>

#include "nielsenkit/error.hpp"

namespace nielsenkit {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
    throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(text) + "\"");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  Rational value(p, q);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  return value.get_str(10);
}

Rational abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

RatMatrix::RatMatrix(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (determinant() != 1) {
    throw Error(ErrorKind::NotDeterminantOne, "matrix " + to_string() + " has determinant " +
                                                  nielsenkit::to_string(determinant()));
  }
}

RatMatrix RatMatrix::identity() {
  return RatMatrix(Unchecked{}, 1, 0, 0, 1);
}

std::string RatMatrix::to_string() const {
  using nielsenkit::to_string;
  return "[[" + to_string(a_) + ", " + to_string(b_) + "], [" + to_string(c_) + ", " + to_string(d_) + "]]";
}

RatMatrix mat_mul(const RatMatrix& x, const RatMatrix& y) {
  return RatMatrix(RatMatrix::Unchecked{}, x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                   x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
}

RatMatrix mat_inv(const RatMatrix& x) {
  return RatMatrix(RatMatrix::Unchecked{}, x.d_, -x.b_, -x.c_, x.a_);
}

void validate_lehner_params(std::span<const Rational> r) {
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j == 0 && r[0] < 2) {
      throw Error(ErrorKind::InvalidParameter, "Lehner parameter r_1 = " + to_string(r[0]) + " is below 2");
    }
    if (j > 0 && r[j] - r[j - 1] < 3) {
      throw Error(ErrorKind::InvalidParameter, "Lehner parameters r_" + std::to_string(j) + " = " +
                                                   to_string(r[j - 1]) + " and r_" + std::to_string(j + 1) +
                                                   " = " + to_string(r[j]) + " are closer than 3");
    }
  }
}

std::vector<RatMatrix> lehner_generators(std::span<const Rational> r) {
  validate_lehner_params(r);
  std::vector<RatMatrix> out;
  out.reserve(r.size());
  for (const Rational& rj : r) {
    out.emplace_back(Rational(-rj), Rational(rj * rj - 1), Rational(1), Rational(-rj));
  }
  return out;
}

std::vector<Rational> default_lehner_params(int count) {
  std::vector<Rational> r;
  for (int j = 1; j <= count; ++j) r.emplace_back(3 * j - 1);
  return r;
}

Representation lehner_representation(std::span<const Rational> r) {
  return Representation{lehner_generators(r)};
}

RatMatrix eval_word(const Representation& rep, const Word& u) {
  u.check_rank(rep.rank());
  std::vector<RatMatrix> inverses;
  inverses.reserve(rep.images.size());
  for (const RatMatrix& m : rep.images) inverses.push_back(mat_inv(m));

  RatMatrix acc = RatMatrix::identity();
  for (int letter : u.letters()) {
    const auto k = static_cast<std::size_t>(std::abs(letter) - 1);
    acc = mat_mul(acc, letter > 0 ? rep.images[k] : inverses[k]);
  }
  return acc;
}

std::vector<RatMatrix> eval_tuple(const Representation& rep, std::span<const Word> words) {
  std::vector<RatMatrix> out;
  out.reserve(words.size());
  for (const Word& w : words) out.push_back(eval_word(rep, w));
  return out;
}

}  // namespace nielsenkit
