#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rse/dynamics.hpp"
#include "rse/lattice.hpp"
#include "rse/operators.hpp"

namespace rse {

/// A mathematical invariant failed. Always a bug, never bad input.
struct InternalDefect : std::logic_error {
  using std::logic_error::logic_error;
};

/// Basis pair (i, j) whose Cesaro limit of T((S^k d_i) . d_j) misses
/// T d_i . T d_j; gap = limit - target.
struct ErgodicWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  Element limit;
  Element target;
  Element gap;
};

/// First (i, j, k), k >= K, with T((S^k d_i) . d_j) != T d_i . T d_j.
/// residual is the Cesaro limit of |a_k - target| for that pair.
struct MixingWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t k = 0;
  Element value;
  Element target;
  Element deviation;
  Element residual;
};

struct ErgodicityDecision {
  bool ergodic = false;            // operator-equality route, definitional
  bool operator_equality = false;  // T == L_S
  bool component_limits = false;   // basis-pair Cesaro limits
  std::optional<ErgodicWitness> witness;
  bool routes_agree() const { return operator_equality == component_limits; }
};

struct WeakMixingDecision {
  bool weak_mixing = false;
  std::optional<MixingWitness> witness;
};

struct MixingReport {
  bool ergodic = false;
  bool weak_mixing = false;
  bool operator_equality = false;
  bool component_limits = false;
  bool route_agreement = false;
  std::optional<ErgodicWitness> ergodic_witness;
  std::optional<MixingWitness> mixing_witness;
};

ErgodicityDecision is_ergodic(const CEPS& sys);
WeakMixingDecision is_weak_mixing(const CEPS& sys);

/// Both decisions. Throws InternalDefect if weak mixing holds without
/// ergodicity; route disagreement is reported, not thrown.
MixingReport analyze(const CEPS& sys);

/// Brute-force decisions over every pair of components (2^n x 2^n), through
/// seq_T_SkP_q and the period-mean limits. Requires n <= kExhaustiveMaxDim.
struct ExhaustiveDecision {
  bool ergodic = false;
  bool weak_mixing = false;
};
inline constexpr std::size_t kExhaustiveMaxDim = 6;
ExhaustiveDecision exhaustive_component_decisions(const CEPS& sys);

// ---------------------------------------------------------------------------
// Density zero sequences and the Koopman-von Neumann extraction.

enum class DensityMode { Exact, Prefix };

struct Checkpoint {
  std::uint64_t n = 0;
  Element average;  // (1/n) sum_{k<n} x_k
};

/// Exact mode decides density zero (limit = period mean). Prefix mode only
/// reports whether the running densities are consistent with density zero at
/// the horizon: the density at N is zero or at most half of the density at
/// floor(N/10).
struct DensityCertificate {
  DensityMode mode = DensityMode::Exact;
  bool density_zero = false;
  std::optional<Element> limit;
  std::uint64_t horizon = 0;
  std::vector<Checkpoint> checkpoints;
};

/// Throws NotAComponent if a term is not a 0/1 vector.
DensityCertificate density_zero_check(const EventuallyPeriodicSeq& seq);
/// Uses the first `horizon` terms; throws std::invalid_argument on an empty
/// sequence or horizon outside [1, prefix.size()].
DensityCertificate density_zero_check(const std::vector<Component>& prefix, std::uint64_t horizon);

/// Decade checkpoints 10, 100, ... below n, then n itself.
std::vector<std::uint64_t> checkpoint_schedule(std::uint64_t n);

struct KvnResult {
  std::vector<Component> components;  // p_k for k < horizon
  /// Per coordinate: n_1 < n_2 < ...; level m is active on [n_{m-1}, n_m).
  std::vector<std::vector<std::uint64_t>> switch_points;
  std::vector<Rational> thresholds;  // thresholds[m-1] is level m
  DensityCertificate certificate;

  /// Active level (1-based) at index k for coordinate i.
  std::size_t level(std::size_t coordinate, std::uint64_t k) const;
  /// Threshold of the active level; (e - p_k) f_k stays below it.
  Rational threshold(std::size_t coordinate, std::uint64_t k) const;
};

/// Default threshold schedule 1/m, m = 1..levels.
std::vector<Rational> default_thresholds(std::size_t levels);

/// Nested-threshold construction, run per coordinate on the first `horizon`
/// terms. J_m = {k : f_k >= thresholds[m-1]}; the switch point n_m is the first
/// index after n_{m-1} from which the running density of J_{m+1} stays below
/// thresholds[m] up to the horizon; p_k = 1 on J_{m(k)}. An empty threshold
/// list means 1/m with as many levels as the horizon allows.
///
/// Throws NegativeInput for a negative term, std::invalid_argument for a
/// horizon below 100 or beyond the sequence, or a non-decreasing threshold
/// list, and CesaroNotVanishing when the Cesaro average at the horizon is
/// nonzero and above half its value at horizon/10.
KvnResult kvn_extract(const std::vector<Element>& fseq, std::uint64_t horizon,
                      std::vector<Rational> thresholds = {});

struct KvnMixingResult {
  bool weak_mixing = false;
  KvnResult extraction;
  /// sup over k in [horizon/10, horizon) of |(e - r_k) |a_k - alpha||.
  Rational masked_tail;
};

/// Runs kvn_extract on |T((S^k p) . q) - Tp . Tq| and reports weak mixing for
/// the pair when the masked deviation vanishes on the last decade before the
/// horizon. Propagates CesaroNotVanishing.
KvnMixingResult weak_mixing_via_kvn(const CEPS& sys, const Component& p, const Component& q,
                                    std::uint64_t horizon);

}  // namespace rse
