#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nielsenkit {

/// A freely reduced word over the free generators x_1, x_2, ...
///
/// Letter i > 0 stands for x_i and i < 0 for the inverse of x_|i|. Every
/// constructor reduces, so a Word never contains an adjacent pair (i, -i).
/// The ambient rank is not stored; callers validate it with `check_rank`.
class Word {
 public:
  Word() = default;

  /// Reduces `letters`; throws MalformedWord on a zero entry.
  static Word reduce(std::span<const int> letters);
  static Word reduce(std::initializer_list<int> letters) {
    return reduce(std::span<const int>(letters.begin(), letters.size()));
  }
  static Word generator(int letter);

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Largest generator index used (0 for the empty word).
  int max_generator() const noexcept;

  /// Throws RankMismatch if some letter is outside x_1..x_rank.
  void check_rank(int rank) const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  explicit Word(std::vector<int> reduced) : letters_(std::move(reduced)) {}
  std::vector<int> letters_;
};

Word mul(const Word& u, const Word& v);
Word inv(const Word& u);
inline std::size_t length(const Word& u) { return u.length(); }

/// Number of letters cancelled when forming u*v.
std::size_t cancellation(const Word& u, const Word& v);

/// |u*v| without materializing the product.
inline std::size_t product_length(const Word& u, const Word& v) {
  return u.length() + v.length() - 2 * cancellation(u, v);
}

Word power(const Word& u, long exponent);

/// Shortlex order with letters ranked x_1 < x_1^-1 < x_2 < x_2^-1 < ...
/// Returns <0, 0 or >0.
int shortlex_compare(std::span<const int> a, std::span<const int> b);
bool shortlex_less(const Word& u, const Word& v);

/// The shortlex-smaller of u and u^-1.
const Word& symmetrized(const Word& u, const Word& u_inverse);

/// An endomorphism of the free group of rank q, given by the images of
/// x_1..x_q.
class Endomorphism {
 public:
  Endomorphism() = default;
  /// Throws RankMismatch if an image uses a generator beyond images.size().
  explicit Endomorphism(std::vector<Word> images);

  static Endomorphism identity(int rank);

  int rank() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<Word>& images() const noexcept { return images_; }
  const Word& image(int generator) const { return images_.at(generator - 1); }
  bool is_identity() const;

  friend bool operator==(const Endomorphism&, const Endomorphism&) = default;

 private:
  std::vector<Word> images_;
};

Word apply_endo(const Endomorphism& f, const Word& u);

/// compose(f, g) maps w to f(g(w)).
Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

/// n-fold composite of f by repeated squaring; endo_power(f, 0) is the
/// identity.
Endomorphism endo_power(const Endomorphism& f, unsigned long n);

}  // namespace nielsenkit
