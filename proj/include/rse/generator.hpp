#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rse/operators.hpp"
#include "rse/rng.hpp"

namespace rse {

enum class Profile {
  BlockPermutation,  // random partition, random permutation inside each block
  Global,            // single block, measure-preserving map of the whole space
  Identity,          // S = identity, T = identity (weak mixing stratum)
};

std::string_view profile_name(Profile p);
/// Throws std::invalid_argument on unknown names.
Profile parse_profile(std::string_view name);

/// Random valid system of exactly `dimension` coordinates.
///
/// Permutations inside a block are a uniformly random single cycle with
/// probability 1/2 and a uniformly random permutation otherwise, so that the
/// ergodic stratum is well populated. Weights are drawn per sigma-cycle from
/// {1..9} and normalized to total 1, which is what T S = T requires.
CEPS generate_ceps(Rng& rng, std::size_t dimension, Profile profile);

/// Dimension drawn uniformly from [1, max_dim].
CEPS generate_ceps(std::uint64_t seed, std::size_t max_dim, Profile profile);

}  // namespace rse
