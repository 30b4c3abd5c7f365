#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/ratmat.hpp"
#include "nielsenkit/shares.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit {

/// How a secret is derived from the hidden items.
enum class SecretFn {
  SumInvAbsTrace,       // sum 1/|tr M_j|   (default for the matrix scheme)
  SumInv,               // sum 1/a_j        (combinatorial scheme)
  ProdAbsTrace,         // prod |tr M_j|
  SumAbsTrace,          // sum |tr M_j|
  ProdTraceSq,          // prod (tr M_j)^2
  SumTraceSq,           // sum (tr M_j)^2
  ProdCommutatorTrace,  // prod tr[M_{2i-1}, M_{2i}], m even
  SumTraceOfSquares,    // sum tr(M_j^2)
  SumInvLength,         // sum 1/|u_j|      (length scheme)
};

std::string_view secret_fn_name(SecretFn fn);
SecretFn parse_secret_fn(std::string_view name);
bool is_matrix_secret_fn(SecretFn fn);

/// Evaluates a matrix-based secret function on the generators in dealer
/// order. Throws InvalidParameter for non-matrix tags or ProdCommutatorTrace
/// with odd m, UndefinedSecret when an inverse trace hits zero.
Rational evaluate_matrix_secret(SecretFn fn, std::span<const RatMatrix> generators);

/// tr(A B A^-1 B^-1)
Rational commutator_trace(const RatMatrix& a, const RatMatrix& b);

// ---------------------------------------------------------------------------
// Combinatorial scheme: the secret is sum 1/a_j over naturals a_1..a_m.

struct CombinatorialShare {
  int n = 0;
  int t = 0;
  int participant = 0;
  std::vector<SlotItem<Rational>> items;
  std::optional<Rational> special_factor;
};

struct CombinatorialDeal {
  ShareDistribution distribution;
  std::vector<CombinatorialShare> shares;
  Rational sum;                            // sum 1/a_j
  std::optional<Rational> special_factor;  // target / sum
  Rational secret;                         // what reconstruction yields
};

/// `values` must hold C(n, t-1) positive integers. With `special_target`
/// every share also carries x = target / sum, and the secret becomes target.
CombinatorialDeal deal_combinatorial(int n, int t, std::span<const Rational> values,
                                     std::optional<Rational> special_target = std::nullopt);

Rational reconstruct_combinatorial(std::span<const CombinatorialShare> shares);

// ---------------------------------------------------------------------------
// Matrix scheme: a regular transcript is applied simultaneously to the
// abstract basis X and to Lehner generators M; words U and matrices N are
// split over the participants.

struct NielsenShare {
  int n = 0;
  int t = 0;
  int participant = 0;
  int matrix_set = 0;  // the j of (R_i, S_j): j = (i mod n) + 1
  std::vector<SlotItem<Word>> words;
  std::vector<SlotItem<RatMatrix>> matrices;
  SecretFn secret_fn = SecretFn::SumInvAbsTrace;
  std::optional<Rational> special_factor;
};

struct NielsenDeal {
  int n = 0;
  int t = 0;
  std::vector<Rational> lehner_params;
  Transcript transcript;
  SecretFn secret_fn = SecretFn::SumInvAbsTrace;
  std::vector<RatMatrix> generators;  // M
  std::vector<Word> words;            // U = transcript(X)
  std::vector<RatMatrix> matrices;    // N = transcript(M)
  std::vector<NielsenShare> shares;
  Rational secret;
  std::optional<Rational> special_factor;
  std::vector<std::string> warnings;
};

int matrix_set_for(int participant, int n);

NielsenDeal deal_nielsen(int n, int t, std::span<const Rational> lehner_params, const Transcript& transcript,
                         SecretFn secret_fn = SecretFn::SumInvAbsTrace,
                         std::optional<Rational> special_target = std::nullopt);

struct NielsenRecovery {
  std::vector<Word> words;              // assembled U
  std::vector<RatMatrix> matrices;      // assembled N
  ReductionResult reduction;            // U carried to X^{+-1}
  std::vector<RatMatrix> reduced_matrices;  // N under the same transcript
  std::vector<RatMatrix> generators;    // M recovered in dealer order
  Rational secret;
};

/// Reduces the assembled words, mirrors the transcript onto the matrices and
/// reads the generators back in dealer order from the signed basis letters.
NielsenRecovery recover_nielsen(std::span<const NielsenShare> shares);

inline Rational reconstruct_nielsen(std::span<const NielsenShare> shares) {
  return recover_nielsen(shares).secret;
}

// ---------------------------------------------------------------------------
// Length scheme: the dealer picks a Nielsen-reduced U; the secret is
// sum 1/|u_j|, recovered from any Nielsen-reduced tuple equivalent to U.

struct LengthShare {
  int n = 0;
  int t = 0;
  int participant = 0;
  int rank = 0;
  std::vector<SlotItem<Word>> words;
};

struct LengthDeal {
  std::vector<Word> dealt;      // U
  std::vector<Word> scrambled;  // V = transcript(U)
  std::vector<LengthShare> shares;
  Rational secret;
  std::vector<std::string> warnings;
};

Rational sum_inverse_lengths(std::span<const Word> words);

LengthDeal deal_length(int n, int t, int rank, std::span<const Word> dealt, const Transcript& transcript);

struct LengthRecovery {
  ReductionResult reduction;
  std::size_t total_length = 0;
  Rational secret;
};

LengthRecovery recover_length(std::span<const LengthShare> shares);

inline Rational reconstruct_length(std::span<const LengthShare> shares) {
  return recover_length(shares).secret;
}

}  // namespace nielsenkit
