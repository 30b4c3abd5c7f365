#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "nielsenkit/error.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit {

enum class MoveKind {
  Invert,         // (T1)_i : u_i <- u_i^-1
  MultiplyRight,  // (T2)_ij: u_i <- u_i u_j, i != j
  Delete,         // (T3)_i : drop u_i, which must be trivial
};

/// One elementary Nielsen move. Indices are 1-based positions into the
/// tuple as it stands when the move executes.
struct Move {
  MoveKind kind = MoveKind::Invert;
  int i = 1;
  int j = 0;

  static Move invert(int i) { return {MoveKind::Invert, i, 0}; }
  static Move multiply_right(int i, int j) { return {MoveKind::MultiplyRight, i, j}; }
  static Move remove(int i) { return {MoveKind::Delete, i, 0}; }

  std::string to_string() const;
  friend bool operator==(const Move&, const Move&) = default;
};

struct Transcript {
  std::vector<Move> moves;
  bool declared_regular = true;

  bool has_delete() const;
  std::size_t size() const noexcept { return moves.size(); }
  bool empty() const noexcept { return moves.empty(); }

  /// Throws NonRegularTranscript if declared regular but carries a Delete.
  void validate() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// `first` followed by `second`.
Transcript concat(const Transcript& first, const Transcript& second);

/// Throws NonRegularTranscript unless `t` consists of T1/T2 moves only.
void require_regular(const Transcript& t, std::string_view context);

inline bool is_trivial(const Word& w) { return w.empty(); }

/// Anything a transcript can act on: words, matrices, ...
template <typename T>
concept TupleElement = requires(const T& a) {
  { mul(a, a) } -> std::convertible_to<T>;
  { inv(a) } -> std::convertible_to<T>;
  { is_trivial(a) } -> std::convertible_to<bool>;
};

template <TupleElement T>
void apply_move(std::vector<T>& tuple, const Move& move) {
  const auto size = static_cast<int>(tuple.size());
  auto in_range = [size](int k) { return k >= 1 && k <= size; };
  if (!in_range(move.i)) {
    throw Error(ErrorKind::IndexOutOfRange, "move " + move.to_string() + " on a tuple of size " +
                                                std::to_string(size));
  }
  auto& target = tuple[static_cast<std::size_t>(move.i - 1)];
  switch (move.kind) {
    case MoveKind::Invert:
      target = inv(target);
      break;
    case MoveKind::MultiplyRight:
      if (!in_range(move.j) || move.j == move.i) {
        throw Error(ErrorKind::IndexOutOfRange, "move " + move.to_string() + " on a tuple of size " +
                                                    std::to_string(size));
      }
      target = mul(target, tuple[static_cast<std::size_t>(move.j - 1)]);
      break;
    case MoveKind::Delete:
      if (!is_trivial(target)) {
        throw Error(ErrorKind::DeleteNonTrivial, "move " + move.to_string() + " targets a nontrivial element");
      }
      tuple.erase(tuple.begin() + (move.i - 1));
      break;
  }
}

/// Replays `t` move by move. Regular transcripts preserve arity.
template <TupleElement T>
std::vector<T> apply_transcript(std::vector<T> tuple, const Transcript& t) {
  t.validate();
  for (const Move& move : t.moves) apply_move(tuple, move);
  return tuple;
}

/// A regular transcript that undoes `t` on every tuple.
Transcript invert_transcript(const Transcript& t);

/// Expresses the composite replacements used by the reducer in T1/T2 moves.
enum class Replacement {
  RightMul,     // u_i <- u_i u_j
  RightMulInv,  // u_i <- u_i u_j^-1
  LeftMul,      // u_i <- u_j u_i
  LeftMulInv,   // u_i <- u_j^-1 u_i
};
std::vector<Move> compile_replacement(Replacement kind, int i, int j);

struct SignedElement {
  int index = 1;  // 1-based tuple position
  int sign = 1;   // +1 or -1
  friend bool operator==(const SignedElement&, const SignedElement&) = default;
};

struct NielsenViolation {
  int condition = 0;  // 0, 1 or 2 for N0, N1, N2
  std::vector<SignedElement> elements;
  std::string to_string() const;
};

/// First violation of N0, N1 or N2 over all choices v_k in {u_i^{+-1}},
/// scanning in (index, +1 before -1) order; nullopt when reduced.
std::optional<NielsenViolation> find_nielsen_violation(std::span<const Word> tuple);

inline bool is_nielsen_reduced(std::span<const Word> tuple) {
  return !find_nielsen_violation(tuple).has_value();
}

struct ReductionResult {
  std::vector<Word> reduced_tuple;
  Transcript transcript;
};

/// Carries `tuple` to a Nielsen-reduced tuple with regular moves.
///
/// Phase 1 greedily applies whichever of u_i <- u_i u_j^{+-1} or
/// u_i <- u_j^{+-1} u_i lowers the total length the most (ties: smallest
/// (i, j, replacement)). Once none does, and the tuple is not yet reduced,
/// the first length-preserving replacement that lowers u_i in the half-word
/// order is taken: compare the pair of major initial halves of u_i and
/// u_i^-1 (smaller first), then min(u_i, u_i^-1), all shortlex. Phase 1 then
/// resumes. Throws ReductionStall if neither applies while N0-N2 still fail,
/// and InvalidParameter on empty elements.
ReductionResult nielsen_reduce(std::vector<Word> tuple);

/// The basis x_1..x_rank.
std::vector<Word> basis_tuple(int rank);

/// True if every element is a single letter and the generator indices are
/// pairwise distinct.
bool is_signed_basis(std::span<const Word> tuple);

/// A random regular transcript on tuples of the given arity. Roughly one
/// move in three is a T1; arity 1 yields T1 moves only.
Transcript random_regular_transcript(int arity, std::size_t moves, std::mt19937_64& rng);

}  // namespace nielsenkit
