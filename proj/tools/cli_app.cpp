#include "cli_app.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "nielsenkit/codec.hpp"
#include "nielsenkit/error.hpp"

namespace nielsenkit::cli {

namespace fs = std::filesystem;
using codec::json;

namespace {

// --- argument parsing -------------------------------------------------------

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    out.emplace_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

long long parse_integer(std::string_view text) {
  const std::string s = trim(text);
  long long value = 0;
  const char* begin = s.data();
  if (!s.empty() && s.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ParseError, "not an integer: \"" + std::string(text) + "\"");
  }
  return value;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& piece : split(text, ',')) out.push_back(static_cast<int>(parse_integer(piece)));
  return out;
}

// "1,-2,-2" is x1 x2^-2; the empty string is the identity.
Word parse_word(std::string_view text) {
  return Word::reduce(parse_int_list(text));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& piece : split(text, ',')) out.push_back(parse_rational(trim(piece)));
  return out;
}

std::uint64_t seed_or_entropy(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device entropy;
  return (std::uint64_t{entropy()} << 32) | entropy();
}

std::vector<Word> read_tuple(const fs::path& path) {
  const json doc = codec::read_file(path);
  if (doc.is_array()) return codec::words_from_json(doc);
  codec::expect_schema(doc, codec::schema::kTuple);
  return codec::words_from_json(doc.at("words"));
}

Transcript read_transcript(const fs::path& path) {
  return codec::transcript_from_json(codec::read_file(path));
}

void write_doc(const fs::path& path, const json& doc) {
  codec::write_file_atomic(path, codec::dump(doc));
}

// Writes to `path` when given, otherwise to `out`.
void emit_doc(const std::string& path, const json& doc, std::ostream& out) {
  if (path.empty()) {
    out << codec::dump(doc);
  } else {
    write_doc(path, doc);
  }
}

void warn(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << json{{"warning", w}}.dump() << "\n";
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- sss ------------------------------------------------------------------------

struct DealArgs {
  std::string scheme;
  int n = 0;
  int t = 0;
  std::string out_dir;
  std::string values;
  std::string special;
  std::string r;
  std::string transcript;
  std::string secret_fn = "sum_inv_abs_trace";
  std::string words;
  int rank = 0;
  std::size_t moves = 8;
  std::optional<std::uint64_t> seed;
};

template <typename Share>
void write_shares(const fs::path& dir, const std::vector<Share>& shares, std::ostream& out) {
  for (const Share& s : shares) {
    const fs::path path = dir / ("share_" + std::to_string(s.participant) + ".json");
    write_doc(path, codec::share_to_json(s));
    out << path.string() << "\n";
  }
}

Transcript transcript_or_random(const DealArgs& a, int arity) {
  if (!a.transcript.empty()) return read_transcript(a.transcript);
  std::mt19937_64 rng(seed_or_entropy(a.seed));
  return random_regular_transcript(arity, a.moves, rng);
}

void sss_deal(const DealArgs& a, std::ostream& out, std::ostream& err) {
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  const std::optional<Rational> special =
      a.special.empty() ? std::nullopt : std::optional<Rational>(parse_rational(a.special));
  json dealer;

  if (a.scheme == "comb") {
    if (a.values.empty()) throw Error(ErrorKind::InvalidParameter, "--values is required for the comb scheme");
    const std::vector<Rational> values = parse_rational_list(a.values);
    const CombinatorialDeal deal = deal_combinatorial(a.n, a.t, values, special);
    write_shares(dir, deal.shares, out);
    dealer = codec::dealer_to_json(deal, values);
  } else if (a.scheme == "nielsen") {
    const int m = static_cast<int>(build_distribution(a.n, a.t).m);
    const std::vector<Rational> r = a.r.empty() ? default_lehner_params(m) : parse_rational_list(a.r);
    const Transcript transcript = transcript_or_random(a, m);
    const NielsenDeal deal = deal_nielsen(a.n, a.t, r, transcript, parse_secret_fn(a.secret_fn), special);
    warn(err, deal.warnings);
    write_shares(dir, deal.shares, out);
    dealer = codec::dealer_to_json(deal);
  } else if (a.scheme == "length") {
    if (a.words.empty()) throw Error(ErrorKind::InvalidParameter, "--words is required for the length scheme");
    const std::vector<Word> dealt = read_tuple(a.words);
    int rank = a.rank;
    for (const Word& w : dealt) rank = std::max(rank, w.max_generator());
    const Transcript transcript = transcript_or_random(a, static_cast<int>(dealt.size()));
    const LengthDeal deal = deal_length(a.n, a.t, rank, dealt, transcript);
    warn(err, deal.warnings);
    write_shares(dir, deal.shares, out);
    dealer = codec::dealer_to_json(deal, a.n, a.t, rank, transcript);
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown scheme \"" + a.scheme + "\"");
  }
  const fs::path dealer_path = dir / "dealer.json";
  write_doc(dealer_path, dealer);
  out << dealer_path.string() << "\n";
}

void sss_reconstruct(const std::string& scheme, const std::vector<std::string>& files, std::ostream& out) {
  std::vector<json> docs;
  for (const auto& f : files) {
    docs.push_back(codec::read_file(f));
    const std::string found = codec::share_scheme(docs.back());
    if (found != scheme) {
      throw Error(ErrorKind::InvalidParameter, f + " holds a " + found + " share, not " + scheme);
    }
  }
  Rational secret;
  if (scheme == "comb") {
    std::vector<CombinatorialShare> shares;
    for (const auto& d : docs) shares.push_back(codec::combinatorial_share_from_json(d));
    secret = reconstruct_combinatorial(shares);
  } else if (scheme == "nielsen") {
    std::vector<NielsenShare> shares;
    for (const auto& d : docs) shares.push_back(codec::nielsen_share_from_json(d));
    secret = reconstruct_nielsen(shares);
  } else if (scheme == "length") {
    std::vector<LengthShare> shares;
    for (const auto& d : docs) shares.push_back(codec::length_share_from_json(d));
    secret = reconstruct_length(shares);
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown scheme \"" + scheme + "\"");
  }
  out << to_string(secret) << "\n";
}

// --- group ------------------------------------------------------------------------

void group_reduce(const std::string& in, const std::string& out_path, std::ostream& out) {
  const std::vector<Word> tuple = read_tuple(in);
  const ReductionResult result = nielsen_reduce(tuple);
  json doc = codec::document(codec::schema::kReduction);
  doc["input"] = codec::words_to_json(tuple);
  doc["reduced"] = codec::words_to_json(result.reduced_tuple);
  doc["transcript"] = codec::to_json(result.transcript);
  emit_doc(out_path, doc, out);
}

void group_verify(const std::string& in, std::ostream& out) {
  const std::vector<Word> tuple = read_tuple(in);
  json doc = codec::document(codec::schema::kVerification);
  const auto violation = find_nielsen_violation(tuple);
  doc["reduced"] = !violation.has_value();
  if (violation) {
    json elements = json::array();
    for (const auto& e : violation->elements) elements.push_back({{"index", e.index}, {"sign", e.sign}});
    doc["violation"] = {{"condition", "N" + std::to_string(violation->condition)}, {"elements", elements}};
    doc["message"] = violation->to_string();
  }
  out << codec::dump(doc);
}

// --- cipher -----------------------------------------------------------------------

struct CipherArgs {
  std::string key;
  std::string in;
  std::string out;
  int alphabet = 26;
  int rank = 2;
  std::string blocks = "2,1,3";
  std::string r;
  std::string sigma;
  std::string transcripts;
  std::size_t moves = 8;
  std::size_t evolution_moves = 0;
  std::string evolution;
  unsigned long steps = 1;
  bool letters = false;
  std::optional<std::uint64_t> seed;
};

void cipher_keygen_cmd(const CipherArgs& a, std::ostream& out) {
  CipherKeygenOptions options;
  options.alphabet_size = a.alphabet;
  options.rank = a.rank;
  options.blocks = parse_int_list(a.blocks);
  if (!a.r.empty()) options.lehner_params = parse_rational_list(a.r);
  if (!a.sigma.empty()) options.sigma = parse_int_list(a.sigma);
  if (!a.transcripts.empty()) {
    const json doc = codec::read_file(a.transcripts);
    const json& list = doc.is_object() ? doc.at("transcripts") : doc;
    std::vector<Transcript> transcripts;
    for (const json& t : list) transcripts.push_back(codec::transcript_from_json(t));
    options.transcripts = std::move(transcripts);
  }
  if (!a.evolution.empty()) options.evolution = read_transcript(a.evolution);
  options.transcript_moves = a.moves;
  options.evolution_moves = a.evolution_moves;
  options.seed = seed_or_entropy(a.seed);
  emit_doc(a.out, codec::cipher_key_to_json(cipher_keygen(options)), out);
}

std::vector<int> read_plaintext(const CipherArgs& a, int alphabet_size) {
  const std::string raw = read_text(a.in);
  if (a.letters) return codec::parse(raw).get<std::vector<int>>();
  std::string text;
  for (char ch : raw) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    text.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  return letters_from_text(text, alphabet_size);
}

void cipher_encrypt_cmd(const CipherArgs& a, std::ostream& out) {
  const CipherKey key = codec::cipher_key_from_json(codec::read_file(a.key));
  const std::vector<int> message = read_plaintext(a, key.alphabet_size);
  emit_doc(a.out, codec::ciphertext_to_json(cipher_encrypt(key, message)), out);
}

void cipher_decrypt_cmd(const CipherArgs& a, std::ostream& out) {
  const CipherKey key = codec::cipher_key_from_json(codec::read_file(a.key));
  const Ciphertext ct = codec::ciphertext_from_json(codec::read_file(a.in));
  const std::vector<int> message = cipher_decrypt(key, ct);
  const std::string text = a.letters ? json(message).dump() + "\n" : text_from_letters(message) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    codec::write_file_atomic(a.out, text);
  }
}

void cipher_evolve_cmd(const CipherArgs& a, std::ostream& out) {
  const CipherKey key = codec::cipher_key_from_json(codec::read_file(a.key));
  emit_doc(a.out, codec::cipher_key_to_json(evolve_key(key, a.steps)), out);
}

// --- pk -----------------------------------------------------------------------------

struct PkArgs {
  int rank = 2;
  std::string base;
  std::string f;
  std::string f_transcript;
  std::optional<unsigned long> exponent;
  std::optional<unsigned long> t;
  bool matrix = false;
  std::string r;
  unsigned long cap = kDefaultExponentCap;
  std::string pub;
  std::string priv;
  std::string msg;
  std::string in;
  std::string out;
  std::size_t moves = 3;
  std::optional<std::uint64_t> seed;
};

constexpr unsigned long kRandomExponentMax = 12;

// "2;1,2" lists the images x1 -> x2, x2 -> x1 x2.
Endomorphism parse_images(std::string_view text) {
  std::vector<Word> images;
  for (const auto& piece : split(text, ';')) images.push_back(parse_word(piece));
  return Endomorphism(std::move(images));
}

void check_mode(const PkArgs& a, const PkPublic& pub) {
  if (a.matrix && pub.mode != PkMode::Matrix) {
    throw Error(ErrorKind::InvalidParameter, "--matrix given but the public key is in word mode");
  }
}

void pk_keygen_cmd(const PkArgs& a, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(seed_or_entropy(a.seed));
  Endomorphism f;
  if (!a.f.empty()) {
    f = parse_images(a.f);
  } else {
    const Transcript t = a.f_transcript.empty() ? random_regular_transcript(a.rank, a.moves, rng)
                                                : read_transcript(a.f_transcript);
    f = automorphism_from_transcript(a.rank, t);
  }
  const unsigned long n =
      a.exponent ? *a.exponent : std::uniform_int_distribution<unsigned long>(1, kRandomExponentMax)(rng);
  std::optional<std::vector<Rational>> r;
  if (!a.r.empty()) r = parse_rational_list(a.r);
  const PkKeyPair keys =
      pk_keygen(a.rank, parse_word(a.base), f, n, a.matrix ? PkMode::Matrix : PkMode::Word, r, a.cap);
  warn(err, keys.warnings);
  write_doc(a.pub, codec::pk_public_to_json(keys.pub));
  write_doc(a.priv, codec::pk_private_to_json(keys.priv));
  out << a.pub << "\n" << a.priv << "\n";
}

void pk_encrypt_cmd(const PkArgs& a, std::ostream& out) {
  const PkPublic pub = codec::pk_public_from_json(codec::read_file(a.pub));
  check_mode(a, pub);
  std::mt19937_64 rng(seed_or_entropy(a.seed));
  const unsigned long t = a.t ? *a.t : std::uniform_int_distribution<unsigned long>(1, kRandomExponentMax)(rng);
  emit_doc(a.out, codec::pk_ciphertext_to_json(pk_encrypt(pub, parse_word(a.msg), t, a.cap)), out);
}

void pk_decrypt_cmd(const PkArgs& a, std::ostream& out) {
  const PkPublic pub = codec::pk_public_from_json(codec::read_file(a.pub));
  check_mode(a, pub);
  const PkPrivate priv = codec::pk_private_from_json(codec::read_file(a.priv));
  const Word m = pk_decrypt(pub, priv, codec::pk_ciphertext_from_json(codec::read_file(a.in)));
  json doc = codec::document(codec::schema::kWord);
  doc["word"] = codec::to_json(m);
  emit_doc(a.out, doc, out);
}

void report_error(std::ostream& err, const Error& e) {
  json doc = {{"error", std::string(error_kind_name(e.kind()))}, {"message", e.what()}};
  if (const auto* coverage = dynamic_cast<const CoverageError*>(&e)) doc["missing_slots"] = coverage->missing_slots();
  err << doc.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-group Nielsen toolkit: secret sharing, ciphers and public keys", "nkit"};
  app.require_subcommand(1);
  std::function<void()> action;

  // sss
  auto* sss = app.add_subcommand("sss", "Secret sharing")->require_subcommand(1);
  DealArgs deal;
  auto* deal_cmd = sss->add_subcommand("deal", "Deal shares and write a dealer record");
  deal_cmd->add_option("--scheme", deal.scheme, "comb, nielsen or length")
      ->required()
      ->check(CLI::IsMember({"comb", "nielsen", "length"}));
  deal_cmd->add_option("--n", deal.n, "Participants")->required();
  deal_cmd->add_option("--t", deal.t, "Threshold")->required();
  deal_cmd->add_option("--out-dir", deal.out_dir, "Output directory")->required();
  deal_cmd->add_option("--values", deal.values, "comb: the C(n,t-1) naturals, comma separated");
  deal_cmd->add_option("--special", deal.special, "Target secret carried as a special factor");
  deal_cmd->add_option("--r", deal.r, "nielsen: Lehner parameters");
  deal_cmd->add_option("--transcript", deal.transcript, "Transcript file (random when absent)");
  deal_cmd->add_option("--secret-fn", deal.secret_fn, "nielsen: secret function tag");
  deal_cmd->add_option("--words", deal.words, "length: tuple file with a Nielsen-reduced U");
  deal_cmd->add_option("--q", deal.rank, "length: ambient rank");
  deal_cmd->add_option("--moves", deal.moves, "Random transcript length");
  deal_cmd->add_option("--seed", deal.seed, "Seed for random transcripts");
  deal_cmd->callback([&] { action = [&] { sss_deal(deal, out, err); }; });

  std::string rec_scheme;
  std::vector<std::string> rec_files;
  auto* rec_cmd = sss->add_subcommand("reconstruct", "Reconstruct the secret from share files");
  rec_cmd->add_option("--scheme", rec_scheme)->required()->check(CLI::IsMember({"comb", "nielsen", "length"}));
  rec_cmd->add_option("shares", rec_files, "Share files")->required();
  rec_cmd->callback([&] { action = [&] { sss_reconstruct(rec_scheme, rec_files, out); }; });

  // group
  auto* group = app.add_subcommand("group", "Nielsen reduction")->require_subcommand(1);
  std::string group_in;
  std::string group_out;
  auto* reduce_cmd = group->add_subcommand("reduce", "Nielsen-reduce a tuple and emit the transcript");
  reduce_cmd->add_option("--in", group_in)->required();
  reduce_cmd->add_option("--out", group_out);
  reduce_cmd->callback([&] { action = [&] { group_reduce(group_in, group_out, out); }; });
  auto* verify_cmd = group->add_subcommand("verify-reduced", "Check N0-N2 on a tuple");
  verify_cmd->add_option("--in", group_in)->required();
  verify_cmd->callback([&] { action = [&] { group_verify(group_in, out); }; });

  // cipher
  auto* cipher = app.add_subcommand("cipher", "Polyalphabetic matrix cipher")->require_subcommand(1);
  CipherArgs c;
  auto* ckeygen = cipher->add_subcommand("keygen", "Generate a cipher key");
  ckeygen->add_option("--alphabet", c.alphabet, "Alphabet size N");
  ckeygen->add_option("--q", c.rank, "Ambient rank");
  ckeygen->add_option("--blocks", c.blocks, "Block sequence P");
  ckeygen->add_option("--r", c.r, "Lehner parameters");
  ckeygen->add_option("--sigma", c.sigma, "Segment permutation");
  ckeygen->add_option("--transcripts", c.transcripts, "File with one transcript per block");
  ckeygen->add_option("--moves", c.moves, "Random transcript length");
  ckeygen->add_option("--evolution", c.evolution, "Evolution transcript file");
  ckeygen->add_option("--evolution-moves", c.evolution_moves, "Random evolution transcript length");
  ckeygen->add_option("--seed", c.seed);
  ckeygen->add_option("--out", c.out);
  ckeygen->callback([&] { action = [&] { cipher_keygen_cmd(c, out); }; });

  auto* cencrypt = cipher->add_subcommand("encrypt", "Encrypt a plaintext file");
  auto* cdecrypt = cipher->add_subcommand("decrypt", "Decrypt a ciphertext file");
  for (auto* sub : {cencrypt, cdecrypt}) {
    sub->add_option("--key", c.key)->required();
    sub->add_option("--in", c.in)->required();
    sub->add_option("--out", c.out);
    sub->add_flag("--letters", c.letters, "Plaintext as a JSON array of letter indices");
  }
  cencrypt->callback([&] { action = [&] { cipher_encrypt_cmd(c, out); }; });
  cdecrypt->callback([&] { action = [&] { cipher_decrypt_cmd(c, out); }; });

  auto* cevolve = cipher->add_subcommand("evolve", "Advance the key evolution counter");
  cevolve->add_option("--key", c.key)->required();
  cevolve->add_option("--out", c.out);
  cevolve->add_option("--steps", c.steps);
  cevolve->callback([&] { action = [&] { cipher_evolve_cmd(c, out); }; });

  // pk
  auto* pk = app.add_subcommand("pk", "Automorphism public-key scheme")->require_subcommand(1);
  PkArgs p;
  auto* pkeygen = pk->add_subcommand("keygen", "Generate a key pair");
  pkeygen->add_option("--q", p.rank, "Rank");
  pkeygen->add_option("--a", p.base, "Base word a, e.g. 1,2")->required();
  pkeygen->add_option("--f", p.f, "Images of f, e.g. \"2;1,2\"");
  pkeygen->add_option("--f-transcript", p.f_transcript, "Transcript file defining f");
  pkeygen->add_option("--n", p.exponent, "Private exponent (random in 1..12 when absent)");
  pkeygen->add_option("--r", p.r, "Lehner parameters (matrix mode)");
  pkeygen->add_option("--moves", p.moves, "Random transcript length for f");
  pkeygen->add_option("--pub", p.pub)->required();
  pkeygen->add_option("--priv", p.priv)->required();
  pkeygen->callback([&] { action = [&] { pk_keygen_cmd(p, out, err); }; });

  auto* pencrypt = pk->add_subcommand("encrypt", "Encrypt a word");
  pencrypt->add_option("--pub", p.pub)->required();
  pencrypt->add_option("--msg", p.msg, "Message word")->required();
  pencrypt->add_option("--t", p.t, "Ephemeral exponent (random in 1..12 when absent)");
  pencrypt->add_option("--out", p.out);
  pencrypt->callback([&] { action = [&] { pk_encrypt_cmd(p, out); }; });

  auto* pdecrypt = pk->add_subcommand("decrypt", "Decrypt a ciphertext");
  pdecrypt->add_option("--pub", p.pub)->required();
  pdecrypt->add_option("--priv", p.priv)->required();
  pdecrypt->add_option("--in", p.in)->required();
  pdecrypt->add_option("--out", p.out);
  pdecrypt->callback([&] { action = [&] { pk_decrypt_cmd(p, out); }; });

  for (auto* sub : {pkeygen, pencrypt, pdecrypt}) {
    sub->add_flag("--matrix", p.matrix, "Matrix mode");
    sub->add_option("--cap", p.cap, "Exponent cap");
    sub->add_option("--seed", p.seed);
  }

  std::vector<std::string> argv_store{"nkit"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (action) action();
    return 0;
  } catch (const Error& e) {
    report_error(err, e);
  } catch (const fs::filesystem_error& e) {
    report_error(err, Error(ErrorKind::IoError, e.what()));
  } catch (const nlohmann::json::exception& e) {
    report_error(err, Error(ErrorKind::ParseError, e.what()));
  }
  return kExitError;
}

}  // namespace nielsenkit::cli
