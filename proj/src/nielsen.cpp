#include "nielsenkit/nielsen.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

namespace nielsenkit {

std::string Move::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case MoveKind::Invert: os << "(T1)_" << i; break;
    case MoveKind::MultiplyRight: os << "(T2)_" << i << '.' << j; break;
    case MoveKind::Delete: os << "(T3)_" << i; break;
  }
  return os.str();
}

bool Transcript::has_delete() const {
  for (const Move& m : moves) {
    if (m.kind == MoveKind::Delete) return true;
  }
  return false;
}

void Transcript::validate() const {
  if (declared_regular && has_delete()) {
    throw Error(ErrorKind::NonRegularTranscript, "transcript is declared regular but contains a (T3) move");
  }
}

Transcript concat(const Transcript& first, const Transcript& second) {
  Transcript out = first;
  out.moves.insert(out.moves.end(), second.moves.begin(), second.moves.end());
  out.declared_regular = first.declared_regular && second.declared_regular;
  return out;
}

void require_regular(const Transcript& t, std::string_view context) {
  if (t.has_delete()) {
    throw Error(ErrorKind::NonRegularTranscript,
                std::string(context) + ": singular transcripts are not accepted here");
  }
}

Transcript invert_transcript(const Transcript& t) {
  require_regular(t, "invert_transcript");
  Transcript out;
  out.moves.reserve(t.moves.size() * 3);
  for (auto it = t.moves.rbegin(); it != t.moves.rend(); ++it) {
    if (it->kind == MoveKind::Invert) {
      out.moves.push_back(*it);
    } else {
      out.moves.push_back(Move::invert(it->j));
      out.moves.push_back(*it);
      out.moves.push_back(Move::invert(it->j));
    }
  }
  return out;
}

std::vector<Move> compile_replacement(Replacement kind, int i, int j) {
  switch (kind) {
    case Replacement::RightMul:
      return {Move::multiply_right(i, j)};
    case Replacement::RightMulInv:
      return {Move::invert(j), Move::multiply_right(i, j), Move::invert(j)};
    case Replacement::LeftMul:
      // (u_i^-1 u_j^-1)^-1 = u_j u_i
      return {Move::invert(i), Move::invert(j), Move::multiply_right(i, j), Move::invert(i), Move::invert(j)};
    case Replacement::LeftMulInv:
      // (u_i^-1 u_j)^-1 = u_j^-1 u_i
      return {Move::invert(i), Move::multiply_right(i, j), Move::invert(i)};
  }
  return {};
}

std::string NielsenViolation::to_string() const {
  std::ostringstream os;
  os << 'N' << condition << " violated by";
  for (std::size_t k = 0; k < elements.size(); ++k) {
    os << (k == 0 ? " " : ", ") << "v" << (k + 1) << "=u" << elements[k].index;
    if (elements[k].sign < 0) os << "^-1";
  }
  return os.str();
}

namespace {

struct Signed {
  SignedElement id;
  const Word* word;
};

// In a tuple, v1 v2 = 1 is exempt only for v2 = v1^-1 taken from the same
// position; u_i = u_j^{+-1} with i != j is a violation.
bool cancels_formally(const Signed& a, const Signed& b) {
  return a.id.index == b.id.index && a.id.sign == -b.id.sign;
}

}  // namespace

std::optional<NielsenViolation> find_nielsen_violation(std::span<const Word> tuple) {
  std::vector<Word> inverses;
  inverses.reserve(tuple.size());
  for (const Word& w : tuple) inverses.push_back(inv(w));

  std::vector<Signed> vs;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    const int index = static_cast<int>(k) + 1;
    vs.push_back({{index, 1}, &tuple[k]});
    vs.push_back({{index, -1}, &inverses[k]});
  }

  for (const Signed& v : vs) {
    if (v.word->empty()) return NielsenViolation{0, {v.id}};
  }

  for (const Signed& v1 : vs) {
    for (const Signed& v2 : vs) {
      if (cancels_formally(v1, v2)) continue;
      const std::size_t len = product_length(*v1.word, *v2.word);
      if (len < v1.word->length() || len < v2.word->length()) {
        return NielsenViolation{1, {v1.id, v2.id}};
      }
    }
  }

  for (const Signed& v1 : vs) {
    for (const Signed& v2 : vs) {
      if (cancels_formally(v1, v2)) continue;
      const Word v12 = mul(*v1.word, *v2.word);
      for (const Signed& v3 : vs) {
        if (cancels_formally(v2, v3)) continue;
        const auto lhs = static_cast<long>(product_length(v12, *v3.word));
        const long rhs = static_cast<long>(v1.word->length()) - static_cast<long>(v2.word->length()) +
                         static_cast<long>(v3.word->length());
        if (lhs <= rhs) return NielsenViolation{2, {v1.id, v2.id, v3.id}};
      }
    }
  }
  return std::nullopt;
}

namespace {

constexpr Replacement kReplacements[] = {Replacement::RightMul, Replacement::RightMulInv,
                                         Replacement::LeftMul, Replacement::LeftMulInv};

std::size_t replacement_length(Replacement r, const Word& ui, const Word& uj, const Word& uj_inv) {
  switch (r) {
    case Replacement::RightMul: return product_length(ui, uj);
    case Replacement::RightMulInv: return product_length(ui, uj_inv);
    case Replacement::LeftMul: return product_length(uj, ui);
    case Replacement::LeftMulInv: return product_length(uj_inv, ui);
  }
  return 0;
}

Word replacement_word(Replacement r, const Word& ui, const Word& uj, const Word& uj_inv) {
  switch (r) {
    case Replacement::RightMul: return mul(ui, uj);
    case Replacement::RightMulInv: return mul(ui, uj_inv);
    case Replacement::LeftMul: return mul(uj, ui);
    case Replacement::LeftMulInv: return mul(uj_inv, ui);
  }
  return {};
}

// Order used for length-preserving steps on words of equal length: first the
// unordered pair of major initial halves {L(w), L(w^-1)} (min, then max),
// then min(w, w^-1). All comparisons are shortlex.
struct HalfWordKey {
  std::span<const int> low, high;
  const Word* sym;

  HalfWordKey(const Word& w, const Word& w_inv) {
    const std::size_t half = (w.length() + 1) / 2;
    std::span<const int> a(w.letters().data(), half);
    std::span<const int> b(w_inv.letters().data(), half);
    if (shortlex_compare(b, a) < 0) std::swap(a, b);
    low = a;
    high = b;
    sym = &symmetrized(w, w_inv);
  }

  bool operator<(const HalfWordKey& other) const {
    if (int c = shortlex_compare(low, other.low)) return c < 0;
    if (int c = shortlex_compare(high, other.high)) return c < 0;
    return shortlex_less(*sym, *other.sym);
  }
};

}  // namespace

ReductionResult nielsen_reduce(std::vector<Word> tuple) {
  for (const Word& w : tuple) {
    if (w.empty()) {
      throw Error(ErrorKind::InvalidParameter, "nielsen_reduce: tuple contains the empty word");
    }
  }
  ReductionResult result;
  if (is_nielsen_reduced(tuple)) {
    result.reduced_tuple = std::move(tuple);
    return result;
  }

  const std::size_t m = tuple.size();
  std::vector<Word> inverses;
  inverses.reserve(m);
  for (const Word& w : tuple) inverses.push_back(inv(w));

  auto perform = [&](Replacement r, std::size_t i, std::size_t j) {
    for (const Move& move : compile_replacement(r, static_cast<int>(i) + 1, static_cast<int>(j) + 1)) {
      apply_move(tuple, move);
      result.transcript.moves.push_back(move);
    }
    inverses[i] = inv(tuple[i]);
  };

  while (true) {
    // Phase 1: strict length descent.
    std::size_t best_drop = 0;
    std::size_t best_i = 0, best_j = 0;
    Replacement best_r = Replacement::RightMul;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        for (Replacement r : kReplacements) {
          const std::size_t len = replacement_length(r, tuple[i], tuple[j], inverses[j]);
          if (len < tuple[i].length() && tuple[i].length() - len > best_drop) {
            best_drop = tuple[i].length() - len;
            best_i = i;
            best_j = j;
            best_r = r;
          }
        }
      }
    }
    if (best_drop > 0) {
      perform(best_r, best_i, best_j);
      continue;
    }

    const auto violation = find_nielsen_violation(tuple);
    if (!violation) break;

    // Phase 2: length-preserving step that lowers one element's HalfWordKey.
    bool moved = false;
    for (std::size_t i = 0; i < m && !moved; ++i) {
      const HalfWordKey current(tuple[i], inverses[i]);
      for (std::size_t j = 0; j < m && !moved; ++j) {
        if (i == j) continue;
        for (Replacement r : kReplacements) {
          if (replacement_length(r, tuple[i], tuple[j], inverses[j]) != tuple[i].length()) continue;
          const Word candidate = replacement_word(r, tuple[i], tuple[j], inverses[j]);
          const Word candidate_inv = inv(candidate);
          if (HalfWordKey(candidate, candidate_inv) < current) {
            perform(r, i, j);
            moved = true;
            break;
          }
        }
      }
    }
    if (!moved) {
      throw Error(ErrorKind::ReductionStall, "nielsen_reduce stalled: " + violation->to_string());
    }
  }
  result.reduced_tuple = std::move(tuple);
  return result;
}

std::vector<Word> basis_tuple(int rank) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(rank));
  for (int i = 1; i <= rank; ++i) out.push_back(Word::generator(i));
  return out;
}

bool is_signed_basis(std::span<const Word> tuple) {
  std::set<int> seen;
  for (const Word& w : tuple) {
    if (w.length() != 1) return false;
    if (!seen.insert(std::abs(w.letters().front())).second) return false;
  }
  return true;
}

Transcript random_regular_transcript(int arity, std::size_t moves, std::mt19937_64& rng) {
  if (arity < 1) throw Error(ErrorKind::InvalidParameter, "random transcript needs arity >= 1");
  Transcript t;
  std::uniform_int_distribution<int> index(1, arity);
  std::uniform_int_distribution<int> kind(0, 2);
  for (std::size_t k = 0; k < moves; ++k) {
    const int i = index(rng);
    if (arity == 1 || kind(rng) == 0) {
      t.moves.push_back(Move::invert(i));
    } else {
      int j = index(rng);
      while (j == i) j = index(rng);
      t.moves.push_back(Move::multiply_right(i, j));
    }
  }
  return t;
}

}  // namespace nielsenkit
