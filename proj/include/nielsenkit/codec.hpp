#pragma once

// Canonical text format shared by every file the CLI reads or writes.
//
// A document is a JSON object with a "schema" tag ("nielsenkit.<kind>/1").
// Keys are emitted sorted and no floating-point value ever appears:
//   rational   "p/q" in lowest terms with q > 0, or "p" for integers
//   word       array of nonzero signed integers, 1-based ([1,-2,-2] = x1 x2^-2)
//   matrix     [["a","b"],["c","d"]] of rationals
//   transcript array of {"op":"T1","i":k}, {"op":"T2","i":k,"j":l},
//              {"op":"T3","i":k}; on input {"op":"T2",...,"pow":t} expands
//              to t copies

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nielsenkit/cipher.hpp"
#include "nielsenkit/nielsen.hpp"
#include "nielsenkit/pubkey.hpp"
#include "nielsenkit/ratmat.hpp"
#include "nielsenkit/sss.hpp"
#include "nielsenkit/word.hpp"

namespace nielsenkit::codec {

using json = nlohmann::json;

namespace schema {
inline constexpr std::string_view kTuple = "nielsenkit.tuple/1";
inline constexpr std::string_view kReduction = "nielsenkit.reduction/1";
inline constexpr std::string_view kVerification = "nielsenkit.verification/1";
inline constexpr std::string_view kTranscript = "nielsenkit.transcript/1";
inline constexpr std::string_view kShare = "nielsenkit.share/1";
inline constexpr std::string_view kDealer = "nielsenkit.dealer/1";
inline constexpr std::string_view kCipherKey = "nielsenkit.cipher-key/1";
inline constexpr std::string_view kCiphertext = "nielsenkit.ciphertext/1";
inline constexpr std::string_view kPkPublic = "nielsenkit.pk-public/1";
inline constexpr std::string_view kPkPrivate = "nielsenkit.pk-private/1";
inline constexpr std::string_view kPkCiphertext = "nielsenkit.pk-ciphertext/1";
inline constexpr std::string_view kWord = "nielsenkit.word/1";
}  // namespace schema

json to_json(const Rational& value);
json to_json(const Word& word);
json to_json(const RatMatrix& matrix);
json to_json(const Move& move);
json to_json(const Transcript& transcript);  // bare move array

Rational rational_from_json(const json& j);
Word word_from_json(const json& j);
RatMatrix matrix_from_json(const json& j);
/// Accepts a bare move array or an object with "moves" (and optional
/// "regular", default true).
Transcript transcript_from_json(const json& j);

json words_to_json(std::span<const Word> words);
std::vector<Word> words_from_json(const json& j);
json matrices_to_json(std::span<const RatMatrix> matrices);
std::vector<RatMatrix> matrices_from_json(const json& j);
json rationals_to_json(std::span<const Rational> values);
std::vector<Rational> rationals_from_json(const json& j);

/// Starts a document carrying the given schema tag.
json document(std::string_view schema_tag);
/// Throws ParseError unless `doc` is an object tagged `schema_tag`.
void expect_schema(const json& doc, std::string_view schema_tag);
std::string schema_of(const json& doc);

// Share files.
json share_to_json(const CombinatorialShare& share);
json share_to_json(const NielsenShare& share);
json share_to_json(const LengthShare& share);
/// "comb", "nielsen" or "length".
std::string share_scheme(const json& doc);
CombinatorialShare combinatorial_share_from_json(const json& doc);
NielsenShare nielsen_share_from_json(const json& doc);
LengthShare length_share_from_json(const json& doc);

// Dealer records (these hold the secret and never go to participants).
json dealer_to_json(const CombinatorialDeal& deal, std::span<const Rational> values);
json dealer_to_json(const NielsenDeal& deal);
json dealer_to_json(const LengthDeal& deal, int n, int t, int rank, const Transcript& transcript);

json cipher_key_to_json(const CipherKey& key);
CipherKey cipher_key_from_json(const json& doc);
json ciphertext_to_json(const Ciphertext& ciphertext);
Ciphertext ciphertext_from_json(const json& doc);

json pk_public_to_json(const PkPublic& pub);
PkPublic pk_public_from_json(const json& doc);
json pk_private_to_json(const PkPrivate& priv);
PkPrivate pk_private_from_json(const json& doc);
json pk_ciphertext_to_json(const PkCiphertext& ciphertext);
PkCiphertext pk_ciphertext_from_json(const json& doc);

/// Deterministic text form: sorted keys, two-space indent, trailing newline.
std::string dump(const json& doc);
json parse(std::string_view text);

json read_file(const std::filesystem::path& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace nielsenkit::codec
