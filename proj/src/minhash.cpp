#include "rumorgraph/minhash.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace rumorgraph {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t function_key(std::uint64_t seed, std::size_t index) {
  return mix64(seed + 0x9e3779b97f4a7c15ULL * (index + 1));
}

}  // namespace

std::vector<std::uint64_t> shingle_hashes(const TokenList& tokens, std::size_t shingle_size) {
  if (shingle_size == 0) throw std::invalid_argument("shingle_size must be >= 1");
  std::vector<std::uint64_t> out;
  auto hash_range = [&](std::size_t begin, std::size_t end) {
    std::uint64_t h = kFnvOffset;
    for (std::size_t i = begin; i < end; ++i) {
      h = fnv1a(h, tokens[i]);
      h = fnv1a(h, "\x1f");
    }
    return h;
  };
  if (tokens.size() < shingle_size) {
    out.push_back(hash_range(0, tokens.size()));
  } else {
    for (std::size_t i = 0; i + shingle_size <= tokens.size(); ++i) {
      out.push_back(hash_range(i, i + shingle_size));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinHashSignature minhash_signature(const TokenList& tokens, const MinHashParams& params) {
  if (params.num_hashes == 0) throw std::invalid_argument("num_hashes must be >= 1");
  const auto shingles = shingle_hashes(tokens, params.shingle_size);
  MinHashSignature sig;
  sig.params = params;
  sig.hashes.assign(params.num_hashes, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t f = 0; f < params.num_hashes; ++f) {
    const std::uint64_t key = function_key(params.seed, f);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t s : shingles) best = std::min(best, mix64(s ^ key));
    sig.hashes[f] = best;
  }
  return sig;
}

double estimate_similarity(const MinHashSignature& a, const MinHashSignature& b) {
  if (!(a.params == b.params) || a.hashes.size() != b.hashes.size()) {
    throw std::invalid_argument("MinHash signatures built with different parameters");
  }
  if (a.hashes.empty()) throw std::invalid_argument("empty MinHash signature");
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.hashes.size(); ++i) same += a.hashes[i] == b.hashes[i];
  return double(same) / double(a.hashes.size());
}

}  // namespace rumorgraph
