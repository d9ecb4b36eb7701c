#pragma once

#include <cstdint>
#include <vector>

#include "rumorgraph/textprep.hpp"

namespace rumorgraph {

struct MinHashParams {
  std::size_t num_hashes = 256;
  std::size_t shingle_size = 2;
  std::uint64_t seed = 42;

  bool operator==(const MinHashParams&) const = default;
};

// Per-function minima over the hashed k-token shingles of a token list.
struct MinHashSignature {
  std::vector<std::uint64_t> hashes;
  MinHashParams params;
};

// Hashes of the distinct k-token shingles. A list shorter than k yields a
// single shingle made of the whole list.
std::vector<std::uint64_t> shingle_hashes(const TokenList& tokens, std::size_t shingle_size);

MinHashSignature minhash_signature(const TokenList& tokens, const MinHashParams& params = {});

// Fraction of positions where the two signatures agree. Throws
// std::invalid_argument if the signatures were built with different params.
double estimate_similarity(const MinHashSignature& a, const MinHashSignature& b);

}  // namespace rumorgraph
