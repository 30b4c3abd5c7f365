#include "nielsenkit/cipher.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "nielsenkit/error.hpp"

namespace nielsenkit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidParameter, what);
}

void validate_sigma(std::span<const int> sigma) {
  std::vector<int> sorted(sigma.begin(), sigma.end());
  std::ranges::sort(sorted);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    require(sorted[k] == static_cast<int>(k) + 1, "sigma is not a permutation of 1..m");
  }
}

// Block (table row) used at each position inside one segment.
std::vector<std::size_t> block_of_position(const CipherKey& key) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < key.blocks.size(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(key.blocks[i]), i);
  }
  return out;
}

}  // namespace

std::size_t CipherKey::block_span() const {
  return static_cast<std::size_t>(std::accumulate(blocks.begin(), blocks.end(), 0));
}

Transcript CipherKey::effective_transcript(std::size_t block) const {
  Transcript t = transcripts.at(block);
  if (evolution) {
    for (unsigned long k = 0; k < counter; ++k) t = concat(t, *evolution);
  }
  return t;
}

void CipherKey::validate() const {
  require(alphabet_size >= 5, "alphabet size must be at least 5");
  require(rank >= 2, "ambient rank must be at least 2");
  require(blocks.size() >= 2, "block sequence needs at least two blocks");
  for (int p : blocks) require(p >= 1 && p <= 4, "block lengths must lie in [1, 4]");
  require(transcripts.size() == blocks.size(), "need one transcript per block");
  require(lehner_params.size() == static_cast<std::size_t>(rank), "need one Lehner parameter per generator");
  validate_lehner_params(lehner_params);
  require(basis.size() == static_cast<std::size_t>(alphabet_size), "basis must have one word per letter");

  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    require_regular(transcripts[i], "cipher key");
    for (std::size_t j = 0; j < i; ++j) {
      require(transcripts[i].moves != transcripts[j].moves,
              "block transcripts " + std::to_string(j + 1) + " and " + std::to_string(i + 1) + " coincide");
    }
    for (const Move& m : transcripts[i].moves) {
      require(m.i <= alphabet_size && m.j <= alphabet_size, "transcript index beyond the alphabet");
    }
  }
  if (evolution) {
    require_regular(*evolution, "cipher key evolution");
    for (const Move& m : evolution->moves) {
      require(m.i <= alphabet_size && m.j <= alphabet_size, "evolution index beyond the alphabet");
    }
  }
  if (sigma) validate_sigma(*sigma);

  // Basis certificate: U reduces to a Nielsen-reduced tuple with no trivial
  // element, hence freely generates a subgroup of rank N.
  for (const Word& w : basis) {
    w.check_rank(rank);
    if (w.empty()) throw Error(ErrorKind::NotABasis, "basis contains the empty word");
  }
  try {
    (void)nielsen_reduce(basis);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ReductionStall) throw;
    throw Error(ErrorKind::NotABasis, std::string("cipher basis is not free: ") + e.what());
  }
}

std::vector<Word> default_cipher_basis(int alphabet_size) {
  std::vector<Word> out;
  const Word x1 = Word::generator(1);
  const Word x2 = Word::generator(2);
  for (int j = 1; j <= alphabet_size; ++j) {
    out.push_back(mul(mul(power(x1, j), x2), power(x1, -j)));
  }
  return out;
}

CipherKey cipher_keygen(const CipherKeygenOptions& options) {
  require(options.alphabet_size >= 5, "alphabet size must be at least 5");
  CipherKey key;
  key.alphabet_size = options.alphabet_size;
  key.rank = options.rank;
  key.blocks = options.blocks;
  key.lehner_params = options.lehner_params ? *options.lehner_params : default_lehner_params(options.rank);
  key.basis = options.basis ? *options.basis : default_cipher_basis(options.alphabet_size);
  key.sigma = options.sigma;

  std::mt19937_64 rng(options.seed);
  if (options.transcripts) {
    key.transcripts = *options.transcripts;
  } else {
    require(options.transcript_moves > 0, "random transcripts need at least one move");
    while (key.transcripts.size() < key.blocks.size()) {
      Transcript t = random_regular_transcript(key.alphabet_size, options.transcript_moves, rng);
      const bool fresh = std::ranges::none_of(key.transcripts, [&](const Transcript& s) { return s.moves == t.moves; });
      if (fresh) key.transcripts.push_back(std::move(t));
    }
  }
  if (options.evolution) {
    key.evolution = options.evolution;
  } else if (options.evolution_moves > 0) {
    key.evolution = random_regular_transcript(key.alphabet_size, options.evolution_moves, rng);
  }

  key.validate();
  (void)build_tables(key);  // rejects keys whose rows repeat a matrix
  return key;
}

CipherTable build_tables(const CipherKey& key) {
  const Representation rep = lehner_representation(key.lehner_params);
  const std::vector<RatMatrix> images = eval_tuple(rep, key.basis);
  CipherTable table;
  table.reserve(key.blocks.size());
  for (std::size_t i = 0; i < key.blocks.size(); ++i) {
    auto row = apply_transcript_mat(images, key.effective_transcript(i));
    for (std::size_t a = 0; a < row.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        require(!(row[a] == row[b]), "table row " + std::to_string(i + 1) + " repeats a matrix");
      }
    }
    table.push_back(std::move(row));
  }
  return table;
}

std::string sigma_id(std::span<const int> sigma) {
  std::string out;
  for (int s : sigma) out += (out.empty() ? "" : ",") + std::to_string(s);
  return out;
}

Ciphertext cipher_encrypt(const CipherKey& key, std::span<const int> message) {
  return cipher_encrypt(key, build_tables(key), message);
}

Ciphertext cipher_encrypt(const CipherKey& key, const CipherTable& table, std::span<const int> message) {
  for (std::size_t k = 0; k < message.size(); ++k) {
    if (message[k] < 1 || message[k] > key.alphabet_size) {
      throw Error(ErrorKind::InvalidParameter, "letter " + std::to_string(message[k]) + " at position " +
                                                   std::to_string(k + 1) + " is outside the alphabet");
    }
  }
  const std::size_t span = key.block_span();
  const auto block_at = block_of_position(key);
  const std::size_t full = message.size() / span;

  Ciphertext out;
  out.segments = full;
  std::vector<std::size_t> order(full);
  std::iota(order.begin(), order.end(), 0);
  if (key.sigma && !message.empty()) {
    if (full != key.sigma->size()) {
      throw Error(ErrorKind::InvalidParameter,
                  "sigma permutes " + std::to_string(key.sigma->size()) + " segments of length " +
                      std::to_string(span) + " but the message has " + std::to_string(full));
    }
    for (std::size_t p = 0; p < full; ++p) order[p] = static_cast<std::size_t>((*key.sigma)[p] - 1);
    out.sigma_id = sigma_id(*key.sigma);
  }

  auto emit = [&](std::span<const int> segment) {
    for (std::size_t pos = 0; pos < segment.size(); ++pos) {
      const auto& row = table[block_at[pos]];
      out.matrices.push_back(row[static_cast<std::size_t>(segment[pos] - 1)]);
    }
  };
  for (std::size_t p = 0; p < full; ++p) emit(message.subspan(order[p] * span, span));
  emit(message.subspan(full * span));
  return out;
}

std::vector<int> cipher_decrypt(const CipherKey& key, const Ciphertext& ciphertext) {
  return cipher_decrypt(key, build_tables(key), ciphertext);
}

std::vector<int> cipher_decrypt(const CipherKey& key, const CipherTable& table, const Ciphertext& ciphertext) {
  const std::size_t span = key.block_span();
  const auto block_at = block_of_position(key);
  const std::size_t z = ciphertext.matrices.size();
  const std::size_t full = z / span;

  std::vector<std::size_t> order(full);
  std::iota(order.begin(), order.end(), 0);
  if (ciphertext.sigma_id || (key.sigma && z > 0)) {
    if (!key.sigma || !ciphertext.sigma_id || *ciphertext.sigma_id != sigma_id(*key.sigma)) {
      throw Error(ErrorKind::DecryptionFailure, "ciphertext segment permutation does not match the key");
    }
    if (full != key.sigma->size()) {
      throw Error(ErrorKind::DecryptionFailure, "ciphertext has the wrong number of segments for sigma");
    }
    for (std::size_t p = 0; p < full; ++p) order[p] = static_cast<std::size_t>((*key.sigma)[p] - 1);
  }

  std::vector<int> message(z, 0);
  auto lookup = [&](std::size_t position, std::size_t pos_in_segment) {
    const std::size_t block = block_at[pos_in_segment];
    const auto& row = table[block];
    const RatMatrix& c = ciphertext.matrices[position];
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (row[t] == c) return static_cast<int>(t) + 1;
    }
    throw Error(ErrorKind::DecryptionFailure, "matrix at position " + std::to_string(position + 1) +
                                                  " is not in the table row of block " + std::to_string(block + 1));
  };
  // Received segment p holds original segment order[p].
  for (std::size_t p = 0; p < full; ++p) {
    for (std::size_t pos = 0; pos < span; ++pos) {
      message[order[p] * span + pos] = lookup(p * span + pos, pos);
    }
  }
  for (std::size_t pos = full * span; pos < z; ++pos) message[pos] = lookup(pos, pos - full * span);
  return message;
}

CipherKey evolve_key(const CipherKey& key, unsigned long steps) {
  if (!key.evolution) throw Error(ErrorKind::InvalidParameter, "key has no evolution transcript");
  CipherKey out = key;
  out.counter += steps;
  return out;
}

std::vector<int> letters_from_text(std::string_view text, int alphabet_size) {
  std::vector<int> out;
  out.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char ch = text[k];
    const int letter = ch - 'A' + 1;
    if (ch < 'A' || ch > 'Z' || letter > alphabet_size) {
      throw Error(ErrorKind::InvalidParameter, std::string("character '") + ch + "' at position " +
                                                   std::to_string(k + 1) + " is outside the alphabet");
    }
    out.push_back(letter);
  }
  return out;
}

std::string text_from_letters(std::span<const int> letters) {
  std::string out;
  for (int letter : letters) {
    if (letter < 1 || letter > 26) throw Error(ErrorKind::InvalidParameter, "letter has no text form");
    out.push_back(static_cast<char>('A' + letter - 1));
  }
  return out;
}

}  // namespace nielsenkit
