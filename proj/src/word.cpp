#include "nielsenkit/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "nielsenkit/error.hpp"

namespace nielsenkit {

namespace {

// Appends `letter` to a reduced buffer, cancelling against its tail.
inline void push_reduced(std::vector<int>& out, int letter) {
  if (!out.empty() && out.back() == -letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

inline int letter_rank(int letter) {
  return letter > 0 ? 2 * letter - 2 : 2 * (-letter) - 1;
}

}  // namespace

Word Word::reduce(std::span<const int> letters) {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int letter : letters) {
    if (letter == 0) {
      throw Error(ErrorKind::MalformedWord, "word contains the letter 0");
    }
    push_reduced(out, letter);
  }
  return Word(std::move(out));
}

Word Word::generator(int letter) {
  return reduce({letter});
}

int Word::max_generator() const noexcept {
  int best = 0;
  for (int letter : letters_) best = std::max(best, std::abs(letter));
  return best;
}

void Word::check_rank(int rank) const {
  if (max_generator() > rank) {
    throw Error(ErrorKind::RankMismatch,
                "word " + to_string() + " uses a generator beyond rank " + std::to_string(rank));
  }
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t k = 0; k < letters_.size();) {
    const int letter = letters_[k];
    std::size_t run = 1;
    while (k + run < letters_.size() && letters_[k + run] == letter) ++run;
    os << 'x' << std::abs(letter);
    const long exponent = letter > 0 ? static_cast<long>(run) : -static_cast<long>(run);
    if (exponent != 1) os << '^' << exponent;
    k += run;
  }
  return os.str();
}

std::size_t cancellation(const Word& u, const Word& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t k = 0;
  const std::size_t limit = std::min(a.size(), b.size());
  while (k < limit && a[a.size() - 1 - k] == -b[k]) ++k;
  return k;
}

Word mul(const Word& u, const Word& v) {
  const std::size_t c = cancellation(u, v);
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::vector<int> out;
  out.reserve(a.size() + b.size() - 2 * c);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(c));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(c), b.end());
  // Both parts are reduced and the junction no longer cancels.
  return Word::reduce(out);
}

Word inv(const Word& u) {
  std::vector<int> out(u.letters().rbegin(), u.letters().rend());
  for (int& letter : out) letter = -letter;
  return Word::reduce(out);
}

Word power(const Word& u, long exponent) {
  const Word base = exponent < 0 ? inv(u) : u;
  Word result;
  for (long k = 0; k < std::labs(exponent); ++k) result = mul(result, base);
  return result;
}

int shortlex_compare(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int ra = letter_rank(a[k]);
    const int rb = letter_rank(b[k]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  return 0;
}

bool shortlex_less(const Word& u, const Word& v) {
  return shortlex_compare(u.letters(), v.letters()) < 0;
}

const Word& symmetrized(const Word& u, const Word& u_inverse) {
  return shortlex_less(u_inverse, u) ? u_inverse : u;
}

Endomorphism::Endomorphism(std::vector<Word> images) : images_(std::move(images)) {
  for (const Word& w : images_) w.check_rank(rank());
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(i));
  return Endomorphism(std::move(images));
}

bool Endomorphism::is_identity() const {
  for (int i = 1; i <= rank(); ++i) {
    if (image(i) != Word::generator(i)) return false;
  }
  return true;
}

Word apply_endo(const Endomorphism& f, const Word& u) {
  u.check_rank(f.rank());
  std::vector<int> out;
  for (int letter : u.letters()) {
    const auto& image = f.image(std::abs(letter)).letters();
    if (letter > 0) {
      for (int y : image) push_reduced(out, y);
    } else {
      for (auto it = image.rbegin(); it != image.rend(); ++it) push_reduced(out, -*it);
    }
  }
  return Word::reduce(out);
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank() != g.rank()) {
    throw Error(ErrorKind::RankMismatch, "cannot compose endomorphisms of different rank");
  }
  std::vector<Word> images;
  images.reserve(g.images().size());
  for (const Word& w : g.images()) images.push_back(apply_endo(f, w));
  return Endomorphism(std::move(images));
}

Endomorphism endo_power(const Endomorphism& f, unsigned long n) {
  Endomorphism result = Endomorphism::identity(f.rank());
  Endomorphism square = f;
  while (n > 0) {
    if (n & 1UL) result = compose(result, square);
    n >>= 1;
    if (n > 0) square = compose(square, square);
  }
  return result;
}

}  // namespace nielsenkit
