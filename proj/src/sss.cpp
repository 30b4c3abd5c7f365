#include "nielsenkit/sss.hpp"

#include <array>
#include <cstdlib>
#include <utility>

#include "nielsenkit/error.hpp"

namespace nielsenkit {

namespace {

constexpr std::array<std::pair<SecretFn, std::string_view>, 9> kSecretFnNames{{
    {SecretFn::SumInvAbsTrace, "sum_inv_abs_trace"},
    {SecretFn::SumInv, "sum_inv"},
    {SecretFn::ProdAbsTrace, "prod_abs_trace"},
    {SecretFn::SumAbsTrace, "sum_abs_trace"},
    {SecretFn::ProdTraceSq, "prod_trace_sq"},
    {SecretFn::SumTraceSq, "sum_trace_sq"},
    {SecretFn::ProdCommutatorTrace, "prod_commutator_trace"},
    {SecretFn::SumTraceOfSquares, "sum_trace_of_squares"},
    {SecretFn::SumInvLength, "sum_inv_length"},
}};

// Shares handed in together must come from one deal.
template <typename Share>
void require_same_scheme(std::span<const Share> shares) {
  if (shares.empty()) throw CoverageError("no shares supplied", {});
  for (const Share& s : shares) {
    if (s.n != shares.front().n || s.t != shares.front().t) {
      throw Error(ErrorKind::InvalidParameter, "shares come from schemes with different (n, t)");
    }
  }
}

template <typename Share>
std::optional<Rational> common_special_factor(std::span<const Share> shares) {
  for (const Share& s : shares) {
    if (s.special_factor != shares.front().special_factor) {
      throw Error(ErrorKind::InvalidParameter, "shares carry different special-secret factors");
    }
  }
  return shares.front().special_factor;
}

std::optional<Rational> special_factor_for(const Rational& base, const std::optional<Rational>& target) {
  if (!target) return std::nullopt;
  if (base == 0) throw Error(ErrorKind::UndefinedSecret, "special secret needs a nonzero base secret");
  return Rational(*target / base);
}

}  // namespace

std::string_view secret_fn_name(SecretFn fn) {
  for (const auto& [tag, name] : kSecretFnNames) {
    if (tag == fn) return name;
  }
  return "unknown";
}

SecretFn parse_secret_fn(std::string_view name) {
  for (const auto& [tag, known] : kSecretFnNames) {
    if (known == name) return tag;
  }
  throw Error(ErrorKind::ParseError, "unknown secret function \"" + std::string(name) + "\"");
}

bool is_matrix_secret_fn(SecretFn fn) {
  return fn != SecretFn::SumInv && fn != SecretFn::SumInvLength;
}

Rational commutator_trace(const RatMatrix& a, const RatMatrix& b) {
  return trace(mat_mul(mat_mul(a, b), mat_mul(mat_inv(a), mat_inv(b))));
}

Rational evaluate_matrix_secret(SecretFn fn, std::span<const RatMatrix> generators) {
  Rational acc;
  switch (fn) {
    case SecretFn::SumInvAbsTrace:
      acc = 0;
      for (const RatMatrix& m : generators) {
        const Rational tr = trace(m);
        if (tr == 0) throw Error(ErrorKind::UndefinedSecret, "generator " + m.to_string() + " has trace 0");
        acc += 1 / abs(tr);
      }
      return acc;
    case SecretFn::ProdAbsTrace:
      acc = 1;
      for (const RatMatrix& m : generators) acc *= abs(trace(m));
      return acc;
    case SecretFn::SumAbsTrace:
      acc = 0;
      for (const RatMatrix& m : generators) acc += abs(trace(m));
      return acc;
    case SecretFn::ProdTraceSq:
      acc = 1;
      for (const RatMatrix& m : generators) acc *= trace(m) * trace(m);
      return acc;
    case SecretFn::SumTraceSq:
      acc = 0;
      for (const RatMatrix& m : generators) acc += trace(m) * trace(m);
      return acc;
    case SecretFn::ProdCommutatorTrace:
      if (generators.size() % 2 != 0) {
        throw Error(ErrorKind::InvalidParameter, "prod_commutator_trace needs an even number of generators");
      }
      acc = 1;
      for (std::size_t k = 0; k < generators.size(); k += 2) acc *= commutator_trace(generators[k], generators[k + 1]);
      return acc;
    case SecretFn::SumTraceOfSquares:
      acc = 0;
      for (const RatMatrix& m : generators) acc += trace(mat_mul(m, m));
      return acc;
    case SecretFn::SumInv:
    case SecretFn::SumInvLength:
      break;
  }
  throw Error(ErrorKind::InvalidParameter,
              std::string(secret_fn_name(fn)) + " is not defined on matrices");
}

// --- combinatorial ---------------------------------------------------------

CombinatorialDeal deal_combinatorial(int n, int t, std::span<const Rational> values,
                                     std::optional<Rational> special_target) {
  CombinatorialDeal deal;
  deal.distribution = build_distribution(n, t);
  if (values.size() != deal.distribution.m) {
    throw Error(ErrorKind::InvalidParameter, "expected C(n, t-1) = " + std::to_string(deal.distribution.m) +
                                                 " values, got " + std::to_string(values.size()));
  }
  deal.sum = 0;
  for (const Rational& a : values) {
    if (a.get_den() != 1 || a < 1) {
      throw Error(ErrorKind::InvalidParameter, "value " + to_string(a) + " is not a positive natural number");
    }
    deal.sum += 1 / a;
  }
  deal.special_factor = special_factor_for(deal.sum, special_target);
  deal.secret = deal.special_factor ? Rational(deal.sum * *deal.special_factor) : deal.sum;

  auto items = split_items<Rational>(deal.distribution, values);
  for (int i = 1; i <= n; ++i) {
    deal.shares.push_back({n, t, i, std::move(items[static_cast<std::size_t>(i - 1)]), deal.special_factor});
  }
  return deal;
}

Rational reconstruct_combinatorial(std::span<const CombinatorialShare> shares) {
  require_same_scheme(shares);
  const auto special = common_special_factor(shares);
  const int n = shares.front().n;
  const std::size_t m = build_distribution(n, shares.front().t).m;

  std::vector<ProvidedShare<Rational>> provided;
  for (const auto& s : shares) provided.push_back({s.participant, s.items});
  const auto values = reconstruct_items<Rational>(n, m, provided);

  Rational secret = 0;
  for (const Rational& a : values) {
    if (a <= 0) throw Error(ErrorKind::InvalidParameter, "share holds a non-positive value");
    secret += 1 / a;
  }
  if (special) secret *= *special;
  return secret;
}

// --- matrix scheme -----------------------------------------------------------

int matrix_set_for(int participant, int n) {
  return participant % n + 1;
}

NielsenDeal deal_nielsen(int n, int t, std::span<const Rational> lehner_params, const Transcript& transcript,
                         SecretFn secret_fn, std::optional<Rational> special_target) {
  const ShareDistribution dist = build_distribution(n, t);
  if (lehner_params.size() != dist.m) {
    throw Error(ErrorKind::InvalidParameter, "need C(n, t-1) = " + std::to_string(dist.m) +
                                                 " Lehner parameters, got " + std::to_string(lehner_params.size()));
  }
  if (!is_matrix_secret_fn(secret_fn)) {
    throw Error(ErrorKind::InvalidParameter,
                std::string(secret_fn_name(secret_fn)) + " cannot be used with the matrix scheme");
  }
  require_regular(transcript, "deal_nielsen");

  NielsenDeal deal;
  deal.n = n;
  deal.t = t;
  deal.lehner_params.assign(lehner_params.begin(), lehner_params.end());
  deal.transcript = transcript;
  deal.secret_fn = secret_fn;
  deal.generators = lehner_generators(lehner_params);

  const Rational base = evaluate_matrix_secret(secret_fn, deal.generators);
  deal.special_factor = special_factor_for(base, special_target);
  deal.secret = deal.special_factor ? Rational(base * *deal.special_factor) : base;

  deal.words = apply_transcript(basis_tuple(static_cast<int>(dist.m)), transcript);
  deal.matrices = apply_transcript_mat(deal.generators, transcript);
  if (transcript.empty()) deal.warnings.emplace_back("empty transcript: shares reveal X and M directly");

  const auto word_items = split_items<Word>(dist, deal.words);
  const auto matrix_items = split_items<RatMatrix>(dist, deal.matrices);
  for (int i = 1; i <= n; ++i) {
    NielsenShare share;
    share.n = n;
    share.t = t;
    share.participant = i;
    share.matrix_set = matrix_set_for(i, n);
    share.words = word_items[static_cast<std::size_t>(i - 1)];
    share.matrices = matrix_items[static_cast<std::size_t>(share.matrix_set - 1)];
    share.secret_fn = secret_fn;
    share.special_factor = deal.special_factor;
    deal.shares.push_back(std::move(share));
  }
  return deal;
}

NielsenRecovery recover_nielsen(std::span<const NielsenShare> shares) {
  require_same_scheme(shares);
  const auto special = common_special_factor(shares);
  const SecretFn fn = shares.front().secret_fn;
  for (const auto& s : shares) {
    if (s.secret_fn != fn) throw Error(ErrorKind::InvalidParameter, "shares name different secret functions");
  }
  const int n = shares.front().n;
  const std::size_t m = build_distribution(n, shares.front().t).m;

  std::vector<ProvidedShare<Word>> word_shares;
  std::vector<ProvidedShare<RatMatrix>> matrix_shares;
  for (const auto& s : shares) {
    word_shares.push_back({s.participant, s.words});
    // Matrix payloads are keyed by the set index j, which is distinct
    // whenever the participants are.
    matrix_shares.push_back({s.matrix_set, s.matrices});
  }

  NielsenRecovery out;
  out.words = reconstruct_items<Word>(n, m, word_shares);
  out.matrices = reconstruct_items<RatMatrix>(n, m, matrix_shares);
  for (const Word& w : out.words) w.check_rank(static_cast<int>(m));

  out.reduction = nielsen_reduce(out.words);
  out.reduced_matrices = apply_transcript_mat(out.matrices, out.reduction.transcript);
  if (!is_signed_basis(out.reduction.reduced_tuple)) {
    throw Error(ErrorKind::NotABasis, "assembled words do not reduce to a signed basis");
  }

  // Slot s now holds x_k^e and the matching matrix M_k^e.
  std::vector<std::optional<RatMatrix>> generators(m);
  for (std::size_t s = 0; s < m; ++s) {
    const int letter = out.reduction.reduced_tuple[s].letters().front();
    const RatMatrix& mat = out.reduced_matrices[s];
    generators[static_cast<std::size_t>(std::abs(letter) - 1)] = letter > 0 ? mat : mat_inv(mat);
  }
  for (auto& g : generators) out.generators.push_back(std::move(*g));

  out.secret = evaluate_matrix_secret(fn, out.generators);
  if (special) out.secret *= *special;
  return out;
}

// --- length scheme -----------------------------------------------------------

Rational sum_inverse_lengths(std::span<const Word> words) {
  Rational acc = 0;
  for (const Word& w : words) {
    if (w.empty()) throw Error(ErrorKind::UndefinedSecret, "a word of length 0 has no inverse length");
    acc += Rational(1, static_cast<unsigned long>(w.length()));
  }
  return acc;
}

LengthDeal deal_length(int n, int t, int rank, std::span<const Word> dealt, const Transcript& transcript) {
  const ShareDistribution dist = build_distribution(n, t);
  if (dealt.size() != dist.m) {
    throw Error(ErrorKind::InvalidParameter, "need C(n, t-1) = " + std::to_string(dist.m) + " words, got " +
                                                 std::to_string(dealt.size()));
  }
  if (rank < 1) throw Error(ErrorKind::InvalidParameter, "ambient rank must be positive");
  for (const Word& w : dealt) {
    w.check_rank(rank);
    if (w.empty()) throw Error(ErrorKind::InvalidParameter, "dealt tuple contains the empty word");
  }
  if (const auto violation = find_nielsen_violation(dealt)) {
    throw Error(ErrorKind::NotNielsenReduced, "dealt tuple is not Nielsen reduced: " + violation->to_string());
  }
  require_regular(transcript, "deal_length");

  LengthDeal deal;
  deal.dealt.assign(dealt.begin(), dealt.end());
  deal.scrambled = apply_transcript(deal.dealt, transcript);
  deal.secret = sum_inverse_lengths(deal.dealt);
  if (transcript.empty()) deal.warnings.emplace_back("empty transcript: shares reveal U directly");

  auto items = split_items<Word>(dist, deal.scrambled);
  for (int i = 1; i <= n; ++i) {
    deal.shares.push_back({n, t, i, rank, std::move(items[static_cast<std::size_t>(i - 1)])});
  }
  return deal;
}

LengthRecovery recover_length(std::span<const LengthShare> shares) {
  require_same_scheme(shares);
  const int n = shares.front().n;
  const int rank = shares.front().rank;
  const std::size_t m = build_distribution(n, shares.front().t).m;

  std::vector<ProvidedShare<Word>> provided;
  for (const auto& s : shares) {
    if (s.rank != rank) throw Error(ErrorKind::RankMismatch, "shares disagree on the ambient rank");
    provided.push_back({s.participant, s.words});
  }
  const auto scrambled = reconstruct_items<Word>(n, m, provided);
  for (const Word& w : scrambled) w.check_rank(rank);

  LengthRecovery out;
  out.reduction = nielsen_reduce(scrambled);
  for (const Word& w : out.reduction.reduced_tuple) out.total_length += w.length();
  out.secret = sum_inverse_lengths(out.reduction.reduced_tuple);
  return out;
}

}  // namespace nielsenkit
