#include "nielsenkit/codec.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "nielsenkit/error.hpp"

namespace nielsenkit::codec {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorKind::ParseError, what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

long long integer_of(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<long long>();
}

int int_field(const json& doc, const char* key) {
  const long long v = integer_of(field(doc, key), key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(std::string(key) + " is out of range");
  }
  return static_cast<int>(v);
}

const json& array_field(const json& doc, const char* key) {
  const json& j = field(doc, key);
  if (!j.is_array()) fail(std::string(key) + " must be an array");
  return j;
}

std::vector<int> ints_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const json& e : j) out.push_back(static_cast<int>(integer_of(e, what)));
  return out;
}

template <typename Payload, typename Encode>
json items_to_json(const std::vector<SlotItem<Payload>>& items, Encode encode) {
  json out = json::array();
  for (const auto& item : items) out.push_back({{"j", item.slot}, {"payload", encode(item.payload)}});
  return out;
}

template <typename Payload, typename Decode>
std::vector<SlotItem<Payload>> items_from_json(const json& j, Decode decode) {
  if (!j.is_array()) fail("items must be an array");
  std::vector<SlotItem<Payload>> out;
  for (const json& item : j) out.push_back({int_field(item, "j"), decode(field(item, "payload"))});
  return out;
}

json share_header(std::string_view scheme, int n, int t, int participant) {
  json doc = document(schema::kShare);
  doc["scheme"] = scheme;
  doc["n"] = n;
  doc["t"] = t;
  doc["participant"] = participant;
  return doc;
}

std::optional<Rational> optional_rational(const json& doc, const char* key) {
  if (!doc.contains(key)) return std::nullopt;
  return rational_from_json(doc.at(key));
}

json warnings_to_json(const std::vector<std::string>& warnings) {
  json out = json::array();
  for (const auto& w : warnings) out.push_back(w);
  return out;
}

}  // namespace

json to_json(const Rational& value) { return to_string(value); }

json to_json(const Word& word) { return word.letters(); }

json to_json(const RatMatrix& m) {
  return json::array({json::array({to_json(m.a()), to_json(m.b())}), json::array({to_json(m.c()), to_json(m.d())})});
}

json to_json(const Move& move) {
  switch (move.kind) {
    case MoveKind::Invert: return {{"op", "T1"}, {"i", move.i}};
    case MoveKind::MultiplyRight: return {{"op", "T2"}, {"i", move.i}, {"j", move.j}};
    case MoveKind::Delete: return {{"op", "T3"}, {"i", move.i}};
  }
  return {};
}

json to_json(const Transcript& transcript) {
  json out = json::array();
  for (const Move& m : transcript.moves) out.push_back(to_json(m));
  return out;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  fail("rational must be a \"p/q\" string");
}

Word word_from_json(const json& j) {
  return Word::reduce(ints_from_json(j, "word letter"));
}

RatMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    fail("matrix must be [[a,b],[c,d]]");
  }
  return RatMatrix(rational_from_json(j[0][0]), rational_from_json(j[0][1]), rational_from_json(j[1][0]),
                   rational_from_json(j[1][1]));
}

Transcript transcript_from_json(const json& j) {
  Transcript t;
  const json* moves = &j;
  if (j.is_object()) {
    moves = &array_field(j, "moves");
    if (j.contains("regular")) {
      if (!j.at("regular").is_boolean()) fail("\"regular\" must be a boolean");
      t.declared_regular = j.at("regular").get<bool>();
    }
  }
  if (!moves->is_array()) fail("transcript must be an array of moves");
  for (const json& record : *moves) {
    const json& op = field(record, "op");
    if (!op.is_string()) fail("move op must be a string");
    const std::string name = op.get<std::string>();
    const int i = int_field(record, "i");
    if (name == "T1") {
      t.moves.push_back(Move::invert(i));
    } else if (name == "T2") {
      const int jj = int_field(record, "j");
      const long long pow = record.contains("pow") ? integer_of(record.at("pow"), "pow") : 1;
      if (pow < 1) fail("pow must be positive");
      for (long long k = 0; k < pow; ++k) t.moves.push_back(Move::multiply_right(i, jj));
    } else if (name == "T3") {
      t.moves.push_back(Move::remove(i));
    } else {
      fail("unknown move op \"" + name + "\"");
    }
  }
  t.validate();
  return t;
}

json words_to_json(std::span<const Word> words) {
  json out = json::array();
  for (const Word& w : words) out.push_back(to_json(w));
  return out;
}

std::vector<Word> words_from_json(const json& j) {
  if (!j.is_array()) fail("expected an array of words");
  std::vector<Word> out;
  for (const json& w : j) out.push_back(word_from_json(w));
  return out;
}

json matrices_to_json(std::span<const RatMatrix> matrices) {
  json out = json::array();
  for (const RatMatrix& m : matrices) out.push_back(to_json(m));
  return out;
}

std::vector<RatMatrix> matrices_from_json(const json& j) {
  if (!j.is_array()) fail("expected an array of matrices");
  std::vector<RatMatrix> out;
  for (const json& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json rationals_to_json(std::span<const Rational> values) {
  json out = json::array();
  for (const Rational& v : values) out.push_back(to_json(v));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) fail("expected an array of rationals");
  std::vector<Rational> out;
  for (const json& v : j) out.push_back(rational_from_json(v));
  return out;
}

json document(std::string_view schema_tag) {
  json doc = json::object();
  doc["schema"] = schema_tag;
  return doc;
}

std::string schema_of(const json& doc) {
  const json& tag = field(doc, "schema");
  if (!tag.is_string()) fail("schema tag must be a string");
  return tag.get<std::string>();
}

void expect_schema(const json& doc, std::string_view schema_tag) {
  const std::string found = schema_of(doc);
  if (found != schema_tag) fail("expected a " + std::string(schema_tag) + " document, found " + found);
}

// --- shares -------------------------------------------------------------------

json share_to_json(const CombinatorialShare& share) {
  json doc = share_header("comb", share.n, share.t, share.participant);
  doc["items"] = items_to_json(share.items, [](const Rational& v) { return to_json(v); });
  if (share.special_factor) doc["special_factor"] = to_json(*share.special_factor);
  return doc;
}

json share_to_json(const NielsenShare& share) {
  json doc = share_header("nielsen", share.n, share.t, share.participant);
  doc["items"] = items_to_json(share.words, [](const Word& w) { return to_json(w); });
  doc["matrix_set"] = share.matrix_set;
  doc["matrix_items"] = items_to_json(share.matrices, [](const RatMatrix& m) { return to_json(m); });
  doc["secret_fn"] = secret_fn_name(share.secret_fn);
  if (share.special_factor) doc["special_factor"] = to_json(*share.special_factor);
  return doc;
}

json share_to_json(const LengthShare& share) {
  json doc = share_header("length", share.n, share.t, share.participant);
  doc["rank"] = share.rank;
  doc["items"] = items_to_json(share.words, [](const Word& w) { return to_json(w); });
  return doc;
}

std::string share_scheme(const json& doc) {
  expect_schema(doc, schema::kShare);
  const json& scheme = field(doc, "scheme");
  if (!scheme.is_string()) fail("scheme must be a string");
  return scheme.get<std::string>();
}

CombinatorialShare combinatorial_share_from_json(const json& doc) {
  if (share_scheme(doc) != "comb") fail("not a comb share");
  CombinatorialShare s;
  s.n = int_field(doc, "n");
  s.t = int_field(doc, "t");
  s.participant = int_field(doc, "participant");
  s.items = items_from_json<Rational>(field(doc, "items"), rational_from_json);
  s.special_factor = optional_rational(doc, "special_factor");
  return s;
}

NielsenShare nielsen_share_from_json(const json& doc) {
  if (share_scheme(doc) != "nielsen") fail("not a nielsen share");
  NielsenShare s;
  s.n = int_field(doc, "n");
  s.t = int_field(doc, "t");
  s.participant = int_field(doc, "participant");
  s.matrix_set = int_field(doc, "matrix_set");
  s.words = items_from_json<Word>(field(doc, "items"), word_from_json);
  s.matrices = items_from_json<RatMatrix>(field(doc, "matrix_items"), matrix_from_json);
  const json& fn = field(doc, "secret_fn");
  if (!fn.is_string()) fail("secret_fn must be a string");
  s.secret_fn = parse_secret_fn(fn.get<std::string>());
  s.special_factor = optional_rational(doc, "special_factor");
  return s;
}

LengthShare length_share_from_json(const json& doc) {
  if (share_scheme(doc) != "length") fail("not a length share");
  LengthShare s;
  s.n = int_field(doc, "n");
  s.t = int_field(doc, "t");
  s.participant = int_field(doc, "participant");
  s.rank = int_field(doc, "rank");
  s.words = items_from_json<Word>(field(doc, "items"), word_from_json);
  return s;
}

// --- dealer records -------------------------------------------------------------

json dealer_to_json(const CombinatorialDeal& deal, std::span<const Rational> values) {
  json doc = document(schema::kDealer);
  doc["scheme"] = "comb";
  doc["n"] = deal.distribution.n;
  doc["t"] = deal.distribution.t;
  doc["m"] = deal.distribution.m;
  doc["values"] = rationals_to_json(values);
  doc["sum"] = to_json(deal.sum);
  if (deal.special_factor) doc["special_factor"] = to_json(*deal.special_factor);
  doc["secret"] = to_json(deal.secret);
  return doc;
}

json dealer_to_json(const NielsenDeal& deal) {
  json doc = document(schema::kDealer);
  doc["scheme"] = "nielsen";
  doc["n"] = deal.n;
  doc["t"] = deal.t;
  doc["m"] = deal.generators.size();
  doc["lehner_r"] = rationals_to_json(deal.lehner_params);
  doc["transcript"] = to_json(deal.transcript);
  doc["secret_fn"] = secret_fn_name(deal.secret_fn);
  doc["generators"] = matrices_to_json(deal.generators);
  doc["words"] = words_to_json(deal.words);
  doc["matrices"] = matrices_to_json(deal.matrices);
  if (deal.special_factor) doc["special_factor"] = to_json(*deal.special_factor);
  doc["secret"] = to_json(deal.secret);
  doc["warnings"] = warnings_to_json(deal.warnings);
  return doc;
}

json dealer_to_json(const LengthDeal& deal, int n, int t, int rank, const Transcript& transcript) {
  json doc = document(schema::kDealer);
  doc["scheme"] = "length";
  doc["n"] = n;
  doc["t"] = t;
  doc["m"] = deal.dealt.size();
  doc["rank"] = rank;
  doc["dealt_words"] = words_to_json(deal.dealt);
  doc["transcript"] = to_json(transcript);
  doc["words"] = words_to_json(deal.scrambled);
  doc["secret"] = to_json(deal.secret);
  doc["warnings"] = warnings_to_json(deal.warnings);
  return doc;
}

// --- cipher ----------------------------------------------------------------------

json cipher_key_to_json(const CipherKey& key) {
  json doc = document(schema::kCipherKey);
  doc["N"] = key.alphabet_size;
  doc["q"] = key.rank;
  doc["lehner_r"] = rationals_to_json(key.lehner_params);
  doc["basis_words"] = words_to_json(key.basis);
  doc["P"] = key.blocks;
  json transcripts = json::array();
  for (const Transcript& t : key.transcripts) transcripts.push_back(to_json(t));
  doc["transcripts"] = transcripts;
  if (key.sigma) doc["sigma"] = *key.sigma;
  if (key.evolution) doc["evolution"] = {{"transcript", to_json(*key.evolution)}, {"counter", key.counter}};
  return doc;
}

CipherKey cipher_key_from_json(const json& doc) {
  expect_schema(doc, schema::kCipherKey);
  CipherKey key;
  key.alphabet_size = int_field(doc, "N");
  key.rank = int_field(doc, "q");
  key.lehner_params = rationals_from_json(field(doc, "lehner_r"));
  key.basis = words_from_json(field(doc, "basis_words"));
  key.blocks = ints_from_json(field(doc, "P"), "P");
  for (const json& t : array_field(doc, "transcripts")) key.transcripts.push_back(transcript_from_json(t));
  if (doc.contains("sigma")) key.sigma = ints_from_json(doc.at("sigma"), "sigma");
  if (doc.contains("evolution")) {
    const json& evo = doc.at("evolution");
    key.evolution = transcript_from_json(field(evo, "transcript"));
    const long long counter = integer_of(field(evo, "counter"), "counter");
    if (counter < 0) fail("counter must be nonnegative");
    key.counter = static_cast<unsigned long>(counter);
  }
  key.validate();
  return key;
}

json ciphertext_to_json(const Ciphertext& ciphertext) {
  json doc = document(schema::kCiphertext);
  doc["segments"] = ciphertext.segments;
  if (ciphertext.sigma_id) doc["sigma_id"] = *ciphertext.sigma_id;
  doc["matrices"] = matrices_to_json(ciphertext.matrices);
  return doc;
}

Ciphertext ciphertext_from_json(const json& doc) {
  expect_schema(doc, schema::kCiphertext);
  Ciphertext c;
  const long long segments = integer_of(field(doc, "segments"), "segments");
  if (segments < 0) fail("segments must be nonnegative");
  c.segments = static_cast<std::size_t>(segments);
  if (doc.contains("sigma_id")) {
    if (!doc.at("sigma_id").is_string()) fail("sigma_id must be a string");
    c.sigma_id = doc.at("sigma_id").get<std::string>();
  }
  c.matrices = matrices_from_json(field(doc, "matrices"));
  return c;
}

// --- public key ------------------------------------------------------------------

json pk_public_to_json(const PkPublic& pub) {
  json doc = document(schema::kPkPublic);
  doc["q"] = pub.rank;
  doc["a"] = to_json(pub.base);
  doc["f_images"] = words_to_json(pub.automorphism.images());
  doc["c"] = to_json(pub.published);
  doc["mode"] = pub.mode == PkMode::Word ? "word" : "matrix";
  if (pub.mode == PkMode::Matrix) doc["lehner_r"] = rationals_to_json(pub.lehner_params);
  return doc;
}

PkPublic pk_public_from_json(const json& doc) {
  expect_schema(doc, schema::kPkPublic);
  PkPublic pub;
  pub.rank = int_field(doc, "q");
  pub.base = word_from_json(field(doc, "a"));
  pub.automorphism = Endomorphism(words_from_json(field(doc, "f_images")));
  if (pub.automorphism.rank() != pub.rank) fail("f_images must list q images");
  certify_automorphism(pub.automorphism);
  pub.published = word_from_json(field(doc, "c"));
  pub.base.check_rank(pub.rank);
  pub.published.check_rank(pub.rank);
  const json& mode = field(doc, "mode");
  if (mode == "word") {
    pub.mode = PkMode::Word;
  } else if (mode == "matrix") {
    pub.mode = PkMode::Matrix;
    pub.lehner_params = rationals_from_json(field(doc, "lehner_r"));
    if (pub.lehner_params.size() != static_cast<std::size_t>(pub.rank)) fail("need q Lehner parameters");
    validate_lehner_params(pub.lehner_params);
  } else {
    fail("mode must be \"word\" or \"matrix\"");
  }
  return pub;
}

json pk_private_to_json(const PkPrivate& priv) {
  json doc = document(schema::kPkPrivate);
  doc["n"] = priv.exponent;
  return doc;
}

PkPrivate pk_private_from_json(const json& doc) {
  expect_schema(doc, schema::kPkPrivate);
  const long long n = integer_of(field(doc, "n"), "n");
  if (n < 1) fail("n must be positive");
  return PkPrivate{static_cast<unsigned long>(n)};
}

json pk_ciphertext_to_json(const PkCiphertext& ciphertext) {
  json doc = document(schema::kPkCiphertext);
  doc["c1"] = std::visit([](const auto& v) { return to_json(v); }, ciphertext.c1);
  doc["c2"] = to_json(ciphertext.c2);
  return doc;
}

PkCiphertext pk_ciphertext_from_json(const json& doc) {
  expect_schema(doc, schema::kPkCiphertext);
  PkCiphertext c;
  const json& c1 = field(doc, "c1");
  if (c1.is_array() && !c1.empty() && c1[0].is_array()) {
    c.c1 = matrix_from_json(c1);
  } else {
    c.c1 = word_from_json(c1);
  }
  c.c2 = word_from_json(field(doc, "c2"));
  return c;
}

// --- text and files -----------------------------------------------------------------

std::string dump(const json& doc) {
  return doc.dump(2) + "\n";
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::random_device entropy;
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(entropy());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::IoError, "cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace nielsenkit::codec
