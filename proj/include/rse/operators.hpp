#pragma once

#include <cstddef>
#include <vector>

#include "rse/lattice.hpp"
#include "rse/matrix.hpp"
#include "rse/rational.hpp"

namespace rse {

/// Strictly positive conditional expectation realized as a weighted block
/// average: (Tf)_i = sum_{j in B(i)} w_j f_j / sum_{j in B(i)} w_j.
/// Blocks are stored canonically: indices ascending, blocks ordered by their
/// smallest index.
class ConditionalExpectationOp {
 public:
  /// Throws std::invalid_argument unless `blocks` partitions {0..n-1} into
  /// nonempty sets and every weight is > 0 (n = weights.size()).
  ConditionalExpectationOp(std::vector<std::vector<std::size_t>> blocks,
                           std::vector<Rational> weights);

  static ConditionalExpectationOp identity(std::size_t n);
  static ConditionalExpectationOp global_mean(std::size_t n);

  SpaceDescriptor space() const { return {weights_.size()}; }
  std::size_t dimension() const { return weights_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t block_of(std::size_t i) const { return block_of_[i]; }
  const Rational& block_weight(std::size_t b) const { return block_weight_[b]; }

  Element apply(const Element& f) const;
  /// T d_j, computed without forming the basis vector.
  Element column(std::size_t j) const;
  RationalMatrix matrix() const;

  friend bool operator==(const ConditionalExpectationOp& a, const ConditionalExpectationOp& b) {
    return a.blocks_ == b.blocks_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<Rational> weights_;
  std::vector<std::size_t> block_of_;
  std::vector<Rational> block_weight_;
};

/// Composition operator (Sf)_i = f_{sigma(i)}: a Riesz homomorphism with Se = e.
class RieszHomMap {
 public:
  /// Throws std::invalid_argument if sigma is empty or maps outside {0..n-1}.
  explicit RieszHomMap(std::vector<std::size_t> sigma);

  static RieszHomMap identity(std::size_t n);
  static RieszHomMap rotation(std::size_t n);  // i -> i+1 mod n

  SpaceDescriptor space() const { return {sigma_.size()}; }
  std::size_t dimension() const { return sigma_.size(); }
  std::size_t operator()(std::size_t i) const { return sigma_[i]; }
  const std::vector<std::size_t>& sigma() const { return sigma_; }

  Element apply(const Element& f) const;
  Component apply(const Component& p) const;
  RationalMatrix matrix() const;

  friend bool operator==(const RieszHomMap&, const RieszHomMap&) = default;

 private:
  std::vector<std::size_t> sigma_;
};

/// Validated conditional expectation preserving system: T S = T.
/// Only validate_ceps constructs one.
class CEPS {
 public:
  SpaceDescriptor space() const { return T_.space(); }
  std::size_t dimension() const { return T_.dimension(); }
  const ConditionalExpectationOp& T() const { return T_; }
  const RieszHomMap& S() const { return S_; }

  friend bool operator==(const CEPS&, const CEPS&) = default;

 private:
  CEPS(ConditionalExpectationOp t, RieszHomMap s) : T_(std::move(t)), S_(std::move(s)) {}
  friend CEPS validate_ceps(const ConditionalExpectationOp&, const RieszHomMap&);

  ConditionalExpectationOp T_;
  RieszHomMap S_;
};

Element apply_T(const ConditionalExpectationOp& T, const Element& f);
Element apply_S(const RieszHomMap& S, const Element& f);

/// Checks T S d_j = T d_j for every basis vector (which by linearity gives
/// T S = T). Throws NotMeasurePreserving with the first failing j, or
/// DimensionMismatch.
CEPS validate_ceps(const ConditionalExpectationOp& T, const RieszHomMap& S);

}  // namespace rse
