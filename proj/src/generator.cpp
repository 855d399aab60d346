#include "rse/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rse/errors.hpp"

namespace rse {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::string_view profile_name(Profile p) {
  switch (p) {
    case Profile::BlockPermutation:
      return "block-permutation";
    case Profile::Global:
      return "global";
    case Profile::Identity:
      return "identity";
  }
  return "unknown";
}

Profile parse_profile(std::string_view name) {
  if (name == "block-permutation") return Profile::BlockPermutation;
  if (name == "global") return Profile::Global;
  if (name == "identity") return Profile::Identity;
  throw std::invalid_argument("unknown profile '" + std::string(name) + "'");
}

namespace {

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Writes a random permutation of `block` into sigma.
void permute_block(Rng& rng, const std::vector<std::size_t>& block,
                   std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> order = block;
  shuffle(rng, order);
  if (rng.coin()) {
    for (std::size_t k = 0; k < order.size(); ++k) sigma[order[k]] = order[(k + 1) % order.size()];
  } else {
    std::vector<std::size_t> image = block;
    shuffle(rng, image);
    for (std::size_t k = 0; k < block.size(); ++k) sigma[block[k]] = image[k];
  }
}

std::vector<Rational> cycle_weights(Rng& rng, const std::vector<std::size_t>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<Rational> w(n, Rational(0));
  std::vector<char> done(n, 0);
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i]) continue;
    const Rational value(static_cast<unsigned long>(rng.between(1, 9)));
    for (std::size_t x = i; !done[x]; x = sigma[x]) {
      done[x] = 1;
      w[x] = value;
      total += value;
    }
  }
  for (auto& x : w) x /= total;
  return w;
}

CEPS attempt(Rng& rng, std::size_t n, Profile profile) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> blocks;

  switch (profile) {
    case Profile::Identity: {
      for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
      std::vector<Rational> w(n);
      for (auto& x : w) x = Rational(static_cast<unsigned long>(rng.between(1, 9)));
      return validate_ceps(ConditionalExpectationOp(std::move(blocks), std::move(w)),
                           RieszHomMap(std::move(sigma)));
    }
    case Profile::Global: {
      blocks.emplace_back(n);
      std::iota(blocks[0].begin(), blocks[0].end(), std::size_t{0});
      break;
    }
    case Profile::BlockPermutation: {
      const std::size_t k = rng.between(1, n);
      std::vector<std::vector<std::size_t>> raw(k);
      for (std::size_t i = 0; i < n; ++i) raw[rng.below(k)].push_back(i);
      for (auto& b : raw) {
        if (!b.empty()) blocks.push_back(std::move(b));
      }
      break;
    }
  }
  for (const auto& block : blocks) permute_block(rng, block, sigma);
  auto weights = cycle_weights(rng, sigma);
  return validate_ceps(ConditionalExpectationOp(std::move(blocks), std::move(weights)),
                       RieszHomMap(std::move(sigma)));
}

}  // namespace

CEPS generate_ceps(Rng& rng, std::size_t dimension, Profile profile) {
  if (dimension == 0) throw std::invalid_argument("dimension must be >= 1");
  for (;;) {
    try {
      return attempt(rng, dimension, profile);
    } catch (const NotMeasurePreserving&) {
      // Unreachable for the constructions above; retry keeps the contract.
    }
  }
}

CEPS generate_ceps(std::uint64_t seed, std::size_t max_dim, Profile profile) {
  if (max_dim == 0) throw std::invalid_argument("max_dim must be >= 1");
  Rng rng(seed);
  const std::size_t n = rng.between(1, max_dim);
  return generate_ceps(rng, n, profile);
}

}  // namespace rse
